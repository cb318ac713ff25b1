#include "ransomtrace/campaign.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "ransomtrace/csv.hpp"
#include "ransomtrace/errors.hpp"

namespace ransomtrace {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(std::string("cannot read ") + what + " at " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ConfigError(std::string("invalid JSON in ") + what + " at " + path.string());
    return j;
}

std::string require_string(const json& j, const char* key, const char* context) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string())
        throw ConfigError(std::string(context) + ": missing or non-string field '" + key + "'");
    return it->get<std::string>();
}

__int128 parse_pico(const std::string& text) {
    __int128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw Error("bad pico value '" + text + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

std::string pico_to_string(__int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

}  // namespace

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
    json j = load_json(path, "campaign config");
    CampaignConfig config;
    try {
        config.name = require_string(j, "name", "campaign config");
        auto seeds = j.find("seeds");
        if (seeds == j.end() || !seeds->is_array())
            throw ConfigError("campaign config: 'seeds' must be an array");
        for (const json& s : *seeds) {
            if (!s.is_string()) throw ConfigError("campaign config: seeds must be strings");
            config.seeds.push_back(AddressId::parse(s.get<std::string>()));
        }
        if (auto rules = j.find("rules"); rules != j.end()) {
            if (!rules->is_array()) throw ConfigError("campaign config: 'rules' must be an array");
            for (const json& r : *rules) {
                RansomRule rule;
                rule.label = require_string(r, "label", "rule");
                std::string denom = require_string(r, "denomination", "rule");
                std::string amount = require_string(r, "amount", "rule");
                if (denom == "BTC") {
                    rule.denomination = Denomination::btc;
                    rule.amount = Satoshi::parse_btc(amount);
                } else if (denom == "USD") {
                    rule.denomination = Denomination::usd;
                    rule.amount = UsdAmount::parse(amount);
                } else {
                    throw ConfigError("rule '" + rule.label + "': denomination must be BTC or USD");
                }
                rule.start_date = Date::parse(require_string(r, "start", "rule"));
                rule.end_date = Date::parse(require_string(r, "end", "rule"));
                config.rules.push_back(std::move(rule));
            }
        }
        if (auto mode = j.find("fee_band_mode"); mode != j.end()) {
            if (!mode->is_string())
                throw ConfigError("campaign config: 'fee_band_mode' must be a string");
            config.fee_band_mode = fee_band_mode_from_string(mode->get<std::string>());
        }
        config.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("campaign config " + path.string() + ": " + e.what());
    }
    return config;
}

void save_cluster_csv(const std::filesystem::path& path, const ClusterSet& cluster) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write cluster CSV to " + path.string());
    out << "address,provenance,round\n";
    for (const ClusterMember& m : cluster.members) {
        out << csv::join_row({m.address.text(), to_string(m.provenance),
                              std::to_string(m.discovery_round)})
            << "\n";
    }
}

ClusterSet load_cluster_csv(const std::filesystem::path& path, const std::string& campaign_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageDependencyMissing("cluster CSV not found at " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "address,provenance,round")
        throw MalformedRow(1, "expected header 'address,provenance,round'");

    ClusterSet cluster{campaign_name, {}};
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv::split_row(line);
        if (fields.size() != 3)
            throw MalformedRow(line_no, "expected 3 columns, got " + std::to_string(fields.size()));
        try {
            cluster.members.push_back(ClusterMember{AddressId::parse(fields[0]),
                                                    provenance_from_string(fields[1]),
                                                    std::stoi(fields[2])});
        } catch (const Error& e) {
            throw MalformedRow(line_no, e.what());
        } catch (const std::exception&) {
            throw MalformedRow(line_no, "bad round number '" + fields[2] + "'");
        }
    }
    return cluster;
}

void save_classification(const std::filesystem::path& path, const ClassificationResult& result) {
    json ransoms = json::array();
    for (const ClassifiedPayment& r : result.ransoms) {
        ransoms.push_back({{"tx_hash", r.payment.tx_hash},
                           {"address", r.payment.address.text()},
                           {"amount_sat", r.payment.amount.value()},
                           {"date", r.payment.gmt_date.to_string()},
                           {"address_was_input", r.payment.address_was_input},
                           {"rule_label", r.rule_label},
                           {"branch", to_string(r.matched_branch)},
                           {"usd_avg_pico", pico_to_string(r.usd_value_avg.pico())}});
    }
    json unclassifiable = json::array();
    for (const UnclassifiablePayment& u : result.unclassifiable) {
        unclassifiable.push_back({{"tx_hash", u.payment.tx_hash},
                                  {"address", u.payment.address.text()},
                                  {"amount_sat", u.payment.amount.value()},
                                  {"date", u.payment.gmt_date.to_string()},
                                  {"address_was_input", u.payment.address_was_input},
                                  {"reason", u.reason}});
    }
    json j{{"ransoms", ransoms},
           {"non_ransom_count", result.non_ransom_count},
           {"non_ransom_sat", result.non_ransom_btc.value()},
           {"non_ransom_usd_pico", pico_to_string(result.non_ransom_usd_avg.pico())},
           {"unclassifiable", unclassifiable},
           {"unclassifiable_sat", result.unclassifiable_btc.value()}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write classification to " + path.string());
    out << j.dump(2) << "\n";
}

ClassificationResult load_classification(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        throw StageDependencyMissing("classification output not found at " + path.string());
    json j = load_json(path, "classification");
    ClassificationResult result;
    try {
        for (const json& r : j.at("ransoms")) {
            PaymentEvent p{r.at("tx_hash").get<std::string>(),
                           AddressId::parse(r.at("address").get<std::string>()),
                           Satoshi::from_value(r.at("amount_sat").get<std::int64_t>()),
                           Date::parse(r.at("date").get<std::string>()),
                           r.at("address_was_input").get<bool>()};
            result.ransoms.push_back(ClassifiedPayment{
                p, r.at("rule_label").get<std::string>(),
                match_branch_from_string(r.at("branch").get<std::string>()),
                UsdAmount::from_pico(parse_pico(r.at("usd_avg_pico").get<std::string>()))});
        }
        result.non_ransom_count = j.at("non_ransom_count").get<std::int64_t>();
        result.non_ransom_btc = Satoshi::from_value(j.at("non_ransom_sat").get<std::int64_t>());
        result.non_ransom_usd_avg =
            UsdAmount::from_pico(parse_pico(j.at("non_ransom_usd_pico").get<std::string>()));
        for (const json& u : j.at("unclassifiable")) {
            PaymentEvent p{u.at("tx_hash").get<std::string>(),
                           AddressId::parse(u.at("address").get<std::string>()),
                           Satoshi::from_value(u.at("amount_sat").get<std::int64_t>()),
                           Date::parse(u.at("date").get<std::string>()),
                           u.at("address_was_input").get<bool>()};
            result.unclassifiable.push_back(
                UnclassifiablePayment{p, u.at("reason").get<std::string>()});
        }
        result.unclassifiable_btc =
            Satoshi::from_value(j.at("unclassifiable_sat").get<std::int64_t>());
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error("malformed classification file " + path.string() + ": " + e.what());
    }
    return result;
}

}  // namespace ransomtrace
