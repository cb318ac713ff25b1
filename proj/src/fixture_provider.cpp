#include "ransomtrace/fixture_provider.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "ransomtrace/errors.hpp"
#include "ransomtrace/wire.hpp"

namespace ransomtrace {

namespace {

using nlohmann::json;

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProviderUnavailable("cannot read fixture file " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw MalformedResponse("invalid JSON in " + path.string());
    return j;
}

}  // namespace

FixtureProvider::FixtureProvider(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!std::filesystem::is_directory(dir_))
        throw ProviderUnavailable("fixture directory not found: " + dir_.string());
}

std::vector<TxRecord> FixtureProvider::load_tx_file(const AddressId& address) const {
    auto path = dir_ / (address.text() + ".json");
    if (!std::filesystem::exists(path)) return {};
    json j = load_json_file(path);
    if (!j.is_object() || !j.contains("address") || !j.contains("txs") || !j["txs"].is_array())
        throw MalformedResponse("fixture file " + path.string() +
                                " must be {\"address\", \"txs\": [...]}");
    if (j["address"] != address.text())
        throw MalformedResponse("fixture file " + path.string() + " describes a different address");

    std::vector<TxRecord> txs;
    std::set<std::string> seen;
    for (const json& item : j["txs"]) {
        TxRecord tx = wire::tx_from_json(item);
        if (!tx.has_input(address) && !tx.has_output(address))
            throw MalformedResponse("fixture tx " + tx.hash + " does not involve " +
                                    address.text());
        if (seen.insert(tx.hash).second) txs.push_back(std::move(tx));
    }
    std::sort(txs.begin(), txs.end(),
              [](const TxRecord& a, const TxRecord& b) { return a.moment() < b.moment(); });
    return txs;
}

void FixtureProvider::fetch_address_transactions(const AddressId& address, const TxSink& sink) {
    for (const TxRecord& tx : load_tx_file(address)) sink(tx);
}

AddressSummary FixtureProvider::fetch_address_summary(const AddressId& address) {
    auto path = dir_ / "summaries.json";
    json j = load_json_file(path);
    if (!j.is_object() || !j.contains("addresses") || !j["addresses"].is_object())
        throw MalformedResponse("summaries.json must be {\"addresses\": {...}}");

    AddressSummary summary{address, 0, std::nullopt};
    const json& table = j["addresses"];
    if (auto it = table.find(address.text()); it != table.end()) {
        summary = wire::summary_from_json(*it);
        if (summary.address != address)
            throw MalformedResponse("summary entry for " + address.text() +
                                    " names a different address");
    }

    // Internal consistency: the summary must agree with the snapshot's
    // own transaction list for this address.
    std::vector<TxRecord> txs = load_tx_file(address);
    if (!txs.empty()) {
        if (summary.total_tx_count != static_cast<std::int64_t>(txs.size()))
            throw MalformedResponse("summary tx count for " + address.text() +
                                    " disagrees with fixture tx list");
        Moment first = txs.front().moment();
        if (!summary.first_seen || summary.first_seen->moment() != first)
            throw MalformedResponse("summary first_seen for " + address.text() +
                                    " disagrees with fixture tx list");
    } else if (summary.total_tx_count != 0) {
        throw MalformedResponse("summary reports transactions for " + address.text() +
                                " but the fixture has none");
    }
    return summary;
}

void write_fixture(const std::filesystem::path& dir, const std::vector<TxRecord>& txs) {
    std::filesystem::create_directories(dir);

    std::map<AddressId, std::vector<const TxRecord*>> by_address;
    for (const TxRecord& tx : txs) {
        std::set<AddressId> involved;
        for (const auto& [a, v] : tx.inputs) involved.insert(a);
        for (const auto& [a, v] : tx.outputs) involved.insert(a);
        for (const AddressId& a : involved) by_address[a].push_back(&tx);
    }

    json summaries = json::object();
    for (auto& [address, list] : by_address) {
        std::sort(list.begin(), list.end(),
                  [](const TxRecord* a, const TxRecord* b) { return a->moment() < b->moment(); });
        json file{{"address", address.text()}, {"txs", json::array()}};
        for (const TxRecord* tx : list) file["txs"].push_back(wire::tx_to_json(*tx));
        std::ofstream out(dir / (address.text() + ".json"), std::ios::binary);
        out << file.dump(2) << "\n";

        AddressSummary s{address, static_cast<std::int64_t>(list.size()),
                         AddressSummary::FirstSeen{list.front()->gmt_date,
                                                   list.front()->gmt_time, list.front()->hash}};
        summaries[address.text()] = wire::summary_to_json(s);
    }
    std::ofstream out(dir / "summaries.json", std::ios::binary);
    out << json{{"addresses", summaries}}.dump(2) << "\n";
}

}  // namespace ransomtrace
