#include "ransomtrace/records.hpp"

#include <algorithm>

namespace ransomtrace {

bool is_tx_hash(std::string_view text) {
    if (text.size() != 64) return false;
    return std::all_of(text.begin(), text.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

void TxRecord::validate() const {
    if (!is_tx_hash(hash)) throw Error("malformed transaction hash: '" + hash + "'");
    if (is_coinbase != inputs.empty())
        throw Error("tx " + hash + ": coinbase flag must match empty input list");
}

Satoshi TxRecord::total_inputs() const {
    Satoshi sum;
    for (const auto& [addr, amount] : inputs) sum += amount;
    return sum;
}

Satoshi TxRecord::total_outputs() const {
    Satoshi sum;
    for (const auto& [addr, amount] : outputs) sum += amount;
    return sum;
}

Satoshi TxRecord::credited_to(const AddressId& address) const {
    Satoshi sum;
    for (const auto& [addr, amount] : outputs)
        if (addr == address) sum += amount;
    return sum;
}

bool TxRecord::has_input(const AddressId& address) const {
    return std::any_of(inputs.begin(), inputs.end(),
                       [&](const auto& io) { return io.first == address; });
}

bool TxRecord::has_output(const AddressId& address) const {
    return std::any_of(outputs.begin(), outputs.end(),
                       [&](const auto& io) { return io.first == address; });
}

void DailyPrice::validate() const {
    if (low > avg || avg > high)
        throw OrderingViolation("price quotes for " + date.to_string() +
                                " violate low <= avg <= high");
}

void RansomRule::validate() const {
    if (end_date < start_date)
        throw Error("rule '" + label + "': start date after end date");
    bool positive = denomination == Denomination::btc ? btc_amount() > Satoshi{}
                                                      : usd_amount() > UsdAmount{};
    if (!positive) throw Error("rule '" + label + "': amount must be positive");
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::seed: return "seed";
        case Provenance::multi_input: return "multi_input";
        case Provenance::shadow: return "shadow";
    }
    throw Error("unknown provenance");
}

Provenance provenance_from_string(std::string_view s) {
    if (s == "seed") return Provenance::seed;
    if (s == "multi_input") return Provenance::multi_input;
    if (s == "shadow") return Provenance::shadow;
    throw Error("unknown provenance: '" + std::string(s) + "'");
}

bool ClusterSet::contains(const AddressId& a) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const ClusterMember& m) { return m.address == a; });
}

std::vector<AddressId> ClusterSet::addresses() const {
    std::vector<AddressId> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.address);
    return out;
}

void ClusterSet::sort() {
    std::sort(members.begin(), members.end(), [](const ClusterMember& a, const ClusterMember& b) {
        return std::tie(a.discovery_round, a.address) < std::tie(b.discovery_round, b.address);
    });
}

std::string to_string(MatchBranch b) {
    switch (b) {
        case MatchBranch::btc_exact: return "btc_exact";
        case MatchBranch::btc_minus_fee: return "btc_minus_fee";
        case MatchBranch::usd_band: return "usd_band";
        case MatchBranch::usd_band_minus_fee: return "usd_band_minus_fee";
    }
    throw Error("unknown match branch");
}

MatchBranch match_branch_from_string(std::string_view s) {
    if (s == "btc_exact") return MatchBranch::btc_exact;
    if (s == "btc_minus_fee") return MatchBranch::btc_minus_fee;
    if (s == "usd_band") return MatchBranch::usd_band;
    if (s == "usd_band_minus_fee") return MatchBranch::usd_band_minus_fee;
    throw Error("unknown match branch: '" + std::string(s) + "'");
}

std::string to_string(FeeBandMode m) {
    return m == FeeBandMode::fee_to_usd ? "fee_to_usd" : "value_plus_fee";
}

FeeBandMode fee_band_mode_from_string(std::string_view s) {
    if (s == "fee_to_usd") return FeeBandMode::fee_to_usd;
    if (s == "value_plus_fee") return FeeBandMode::value_plus_fee;
    throw Error("unknown fee band mode: '" + std::string(s) + "'");
}

void CampaignConfig::validate() const {
    if (name.empty()) throw Error("campaign name must not be empty");
    if (seeds.empty()) throw Error("campaign '" + name + "' must list at least one seed address");
    for (const auto& r : rules) r.validate();
}

}  // namespace ransomtrace
