#pragma once

// Independent reference implementations the production code is checked
// against. Deliberately naive: nested loops, no worklists, no shared
// arithmetic helpers — the clustering oracle rescans the whole universe
// until stable, the classification oracle reevaluates every
// (payment, rule) pair with cross-multiplied big integers instead of
// the library's exact-division route.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ransomtrace/records.hpp"
#include "tests/support/universe.hpp"

namespace rt_test {

using BigInt = boost::multiprecision::cpp_int;

inline bool oracle_appeared_before(const TxUniverse& universe, const AddressId& address,
                                   const Moment& moment) {
    for (const TxRecord& tx : universe.txs) {
        if (!(tx.moment() < moment)) continue;
        for (const auto& [a, v] : tx.inputs)
            if (a == address) return true;
        for (const auto& [a, v] : tx.outputs)
            if (a == address) return true;
    }
    return false;
}

inline std::optional<AddressId> oracle_shadow(const TxUniverse& universe, const TxRecord& tx) {
    std::set<AddressId> outputs;
    for (const auto& [a, v] : tx.outputs) outputs.insert(a);
    if (outputs.size() != 2) return std::nullopt;
    for (const AddressId& a : outputs) {
        for (const auto& [in, v] : tx.inputs)
            if (in == a) return std::nullopt;
    }
    std::optional<AddressId> fresh;
    int unseen = 0;
    for (const AddressId& a : outputs) {
        if (!oracle_appeared_before(universe, a, tx.moment())) {
            ++unseen;
            fresh = a;
        }
    }
    if (unseen != 1) return std::nullopt;
    return fresh;
}

inline std::set<AddressId> oracle_expand(const TxUniverse& universe,
                                         const std::vector<AddressId>& seeds,
                                         bool shadow_detection = true,
                                         std::optional<std::size_t> max_inputs = std::nullopt) {
    std::set<AddressId> cluster(seeds.begin(), seeds.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const TxRecord& tx : universe.txs) {
            if (tx.is_coinbase) continue;
            bool spends_member = false;
            for (const auto& [a, v] : tx.inputs)
                if (cluster.count(a)) spends_member = true;
            if (!spends_member) continue;

            std::set<AddressId> inputs;
            for (const auto& [a, v] : tx.inputs) inputs.insert(a);
            if (!max_inputs || inputs.size() <= *max_inputs) {
                for (const AddressId& a : inputs)
                    if (cluster.insert(a).second) changed = true;
            }
            if (shadow_detection) {
                if (auto fresh = oracle_shadow(universe, tx))
                    if (cluster.insert(*fresh).second) changed = true;
            }
        }
    }
    return cluster;
}

struct OracleVerdict {
    std::string rule_label;
    std::string branch;
    BigInt usd_avg_pico;

    bool operator==(const OracleVerdict&) const = default;
};

// Eq-by-eq reevaluation of one payment. All USD comparisons are done by
// cross-multiplication (value_pico * 1e8 forms), so no division happens
// anywhere.
inline std::optional<OracleVerdict> oracle_classify(const PaymentEvent& payment,
                                                    const TxRecord& tx,
                                                    const std::vector<RansomRule>& rules,
                                                    const DailyPrice& price, FeeBandMode mode) {
    const BigInt sat_per_btc = 100'000'000;
    BigInt received = payment.amount.value();
    BigInt low = BigInt(static_cast<std::int64_t>(price.low.pico()));
    BigInt avg = BigInt(static_cast<std::int64_t>(price.avg.pico()));
    BigInt high = BigInt(static_cast<std::int64_t>(price.high.pico()));

    std::optional<BigInt> fee;
    if (!tx.is_coinbase) {
        BigInt total_in = 0, total_out = 0;
        for (const auto& [a, v] : tx.inputs) total_in += v.value();
        for (const auto& [a, v] : tx.outputs) total_out += v.value();
        fee = total_in - total_out;
    }

    for (const RansomRule& rule : rules) {
        if (payment.gmt_date < rule.start_date || rule.end_date < payment.gmt_date) continue;

        std::optional<std::string> branch;
        if (rule.denomination == Denomination::btc) {
            BigInt demanded = rule.btc_amount().value();
            if (received == demanded) branch = "btc_exact";
            else if (fee && received + *fee == demanded) branch = "btc_minus_fee";
        } else {
            BigInt demanded_scaled = BigInt(static_cast<std::int64_t>(rule.usd_amount().pico())) *
                                     sat_per_btc;
            if (received * low <= demanded_scaled && demanded_scaled <= received * high) {
                branch = "usd_band";
            } else if (fee) {
                if (mode == FeeBandMode::fee_to_usd) {
                    BigInt adjusted = demanded_scaled - *fee * avg;
                    if (received * low <= adjusted && adjusted <= received * high)
                        branch = "usd_band_minus_fee";
                } else {
                    BigInt gross = received + *fee;
                    if (gross * low <= demanded_scaled && demanded_scaled <= gross * high)
                        branch = "usd_band_minus_fee";
                }
            }
        }
        if (branch) {
            BigInt value = received * avg;
            return OracleVerdict{rule.label, *branch, value / sat_per_btc};
        }
    }
    return std::nullopt;
}

}  // namespace rt_test
