#include "ransomtrace/http_provider.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

#include "ransomtrace/errors.hpp"
#include "ransomtrace/wire.hpp"

namespace ransomtrace {

namespace {

using nlohmann::json;

json parse_body(const std::string& body, const std::string& path) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw MalformedResponse("invalid JSON from " + path);
    return j;
}

}  // namespace

namespace {

ProviderSpec validated(ProviderSpec spec) {
    spec.validate();
    return spec;
}

}  // namespace

HttpProvider::HttpProvider(ProviderSpec spec, std::shared_ptr<Clock> clock)
    : spec_(validated(std::move(spec))),
      clock_(clock ? std::move(clock) : std::make_shared<SystemClock>()),
      limiter_(spec_.rate_limit, clock_) {}

std::string HttpProvider::get_with_retry(const std::string& path) {
    Backoff backoff(spec_.backoff_seed);
    int last_status = 0;
    bool rate_limited = false;
    for (int attempt = 0; attempt <= spec_.max_retries; ++attempt) {
        if (attempt > 0) clock_->sleep_for(backoff.delay(attempt - 1));
        limiter_.acquire();

        // A fresh connection per request keeps concurrent fetches safe;
        // the limiter spaces requests out anyway.
        httplib::Client client(spec_.base_url_or_dir);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(30, 0);
        auto res = client.Get(path);
        if (!res) {
            last_status = 0;
            continue;
        }
        last_status = res->status;
        if (res->status == 200) return res->body;
        if (res->status == 404) return "";  // unknown resource, not an outage
        if (res->status == 429) {
            rate_limited = true;
            continue;
        }
        if (res->status >= 500) {
            rate_limited = false;
            continue;
        }
        throw MalformedResponse("unexpected status " + std::to_string(res->status) + " from " +
                                path);
    }
    if (rate_limited)
        throw RateLimited("provider kept rate-limiting " + path + " after " +
                          std::to_string(spec_.max_retries) + " retries");
    throw ProviderUnavailable("provider unreachable for " + path + " (last status " +
                              std::to_string(last_status) + ") after " +
                              std::to_string(spec_.max_retries) + " retries");
}

void HttpProvider::fetch_address_transactions(const AddressId& address, const TxSink& sink) {
    std::vector<TxRecord> txs;
    std::set<std::string> seen;
    std::int64_t offset = 0;
    std::int64_t total = -1;
    while (true) {
        std::string path = "/address/" + address.text() + "/transactions?offset=" +
                           std::to_string(offset) + "&limit=" + std::to_string(spec_.page_size);
        std::string body = get_with_retry(path);
        if (body.empty()) break;  // 404: unknown address
        json j = parse_body(body, path);
        if (!j.is_object() || !j.contains("total") || !j.contains("txs") || !j["txs"].is_array())
            throw MalformedResponse("transaction page from " + path +
                                    " must carry 'total' and 'txs'");
        if (!j["total"].is_number_integer() || j["total"].get<std::int64_t>() < 0)
            throw MalformedResponse("'total' must be a non-negative integer");
        std::int64_t page_total = j["total"].get<std::int64_t>();
        if (total < 0) total = page_total;
        else if (total != page_total)
            throw MalformedResponse("page total changed mid-stream for " + address.text());

        for (const json& item : j["txs"]) {
            TxRecord tx = wire::tx_from_json(item);
            if (seen.insert(tx.hash).second) txs.push_back(std::move(tx));
        }
        offset += static_cast<std::int64_t>(j["txs"].size());
        if (offset >= total || j["txs"].empty()) break;
    }
    std::sort(txs.begin(), txs.end(),
              [](const TxRecord& a, const TxRecord& b) { return a.moment() < b.moment(); });
    for (const TxRecord& tx : txs) sink(tx);
}

AddressSummary HttpProvider::fetch_address_summary(const AddressId& address) {
    std::string path = "/address/" + address.text() + "/summary";
    std::string body = get_with_retry(path);
    if (body.empty()) return AddressSummary{address, 0, std::nullopt};  // never seen
    AddressSummary s = wire::summary_from_json(parse_body(body, path));
    if (s.address != address)
        throw MalformedResponse("summary from " + path + " names a different address");
    return s;
}

}  // namespace ransomtrace
