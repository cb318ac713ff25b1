#pragma once

// Deterministic random transaction universes for clustering and
// classification tests, plus an in-memory Provider over them.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ransomtrace/provider.hpp"
#include "ransomtrace/records.hpp"

namespace rt_test {

using namespace ransomtrace;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::int64_t rand_i64(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline AddressId random_address(Rng& rng) {
    static const std::string alphabet =
        "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
    std::string text(1, chance(rng, 0.85) ? '1' : '3');
    int len = rand_int(rng, 26, 35);
    while (static_cast<int>(text.size()) < len)
        text += alphabet[rand_int(rng, 0, static_cast<int>(alphabet.size()) - 1)];
    return AddressId::parse(text);
}

inline std::string random_hash(Rng& rng) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (int i = 0; i < 64; ++i) out += hex[rand_int(rng, 0, 15)];
    return out;
}

// A closed little blockchain: every address that exists anywhere in
// `txs` is known, and "seen before" questions are answered by scanning
// it. Transactions are kept in ascending moment order.
struct TxUniverse {
    std::vector<TxRecord> txs;

    std::vector<TxRecord> involving(const AddressId& address) const {
        std::vector<TxRecord> out;
        for (const TxRecord& tx : txs)
            if (tx.has_input(address) || tx.has_output(address)) out.push_back(tx);
        return out;
    }

    std::optional<Moment> first_appearance(const AddressId& address) const {
        for (const TxRecord& tx : txs)
            if (tx.has_input(address) || tx.has_output(address)) return tx.moment();
        return std::nullopt;
    }

    std::set<AddressId> all_addresses() const {
        std::set<AddressId> out;
        for (const TxRecord& tx : txs) {
            for (const auto& [a, v] : tx.inputs) out.insert(a);
            for (const auto& [a, v] : tx.outputs) out.insert(a);
        }
        return out;
    }
};

class UniverseProvider : public Provider {
public:
    explicit UniverseProvider(TxUniverse universe) : universe_(std::move(universe)) {}

    void fetch_address_transactions(const AddressId& address, const TxSink& sink) override {
        for (const TxRecord& tx : universe_.involving(address)) sink(tx);
    }

    AddressSummary fetch_address_summary(const AddressId& address) override {
        auto txs = universe_.involving(address);
        if (txs.empty()) return AddressSummary{address, 0, std::nullopt};
        return AddressSummary{address, static_cast<std::int64_t>(txs.size()),
                              AddressSummary::FirstSeen{txs.front().gmt_date,
                                                        txs.front().gmt_time, txs.front().hash}};
    }

    const TxUniverse& universe() const { return universe_; }

private:
    TxUniverse universe_;
};

struct ClusterFixture {
    TxUniverse universe;
    std::vector<AddressId> seeds;
};

// Random universe biased toward the shapes the heuristics care about:
// multi-input spends, two-output transactions with one fresh address,
// ambiguous fresh pairs, self-change, mixers, coinbase, and the
// occasional shared timestamp to exercise the hash tie-break.
inline ClusterFixture make_cluster_fixture(std::uint64_t seed) {
    Rng rng(seed);
    ClusterFixture fixture;

    int pool_size = rand_int(rng, 20, 80);
    std::vector<AddressId> pool;
    std::set<AddressId> unique;
    while (static_cast<int>(pool.size()) < pool_size) {
        AddressId a = random_address(rng);
        if (unique.insert(a).second) pool.push_back(a);
    }

    std::vector<AddressId> seen;  // appeared in an earlier tx
    std::set<AddressId> seen_set;
    std::size_t fresh_cursor = 0;  // pool entries not yet used anywhere

    auto any_pool = [&](Rng& r) { return pool[rand_int(r, 0, pool_size - 1)]; };
    auto seen_or_pool = [&](Rng& r) {
        if (!seen.empty() && chance(r, 0.8))
            return seen[rand_int(r, 0, static_cast<int>(seen.size()) - 1)];
        return any_pool(r);
    };
    auto fresh = [&]() -> std::optional<AddressId> {
        while (fresh_cursor < pool.size()) {
            AddressId a = pool[fresh_cursor++];
            if (!seen_set.count(a)) return a;
        }
        return std::nullopt;
    };
    auto note_seen = [&](const TxRecord& tx) {
        for (const auto& [a, v] : tx.inputs)
            if (seen_set.insert(a).second) seen.push_back(a);
        for (const auto& [a, v] : tx.outputs)
            if (seen_set.insert(a).second) seen.push_back(a);
    };

    int n_tx = rand_int(rng, 30, 200);
    Date date = Date::parse("2013-09-01");
    int clock_minutes = 0;
    for (int i = 0; i < n_tx; ++i) {
        // Mostly advancing timestamps; sometimes reuse the previous one.
        if (!chance(rng, 0.1)) clock_minutes += rand_int(rng, 1, 180);
        if (clock_minutes >= 24 * 60) {
            date = date.next_day();
            clock_minutes %= 24 * 60;
        }

        TxRecord tx;
        tx.hash = random_hash(rng);
        tx.gmt_date = date;
        tx.gmt_time = TimeOfDay::from_hms(clock_minutes / 60, clock_minutes % 60,
                                          rand_int(rng, 0, 59));

        if (chance(rng, 0.05)) {
            tx.is_coinbase = true;
            tx.outputs.emplace_back(any_pool(rng),
                                    Satoshi::from_value(rand_i64(rng, 1, 50'0000'0000)));
        } else {
            int n_in = chance(rng, 0.1) ? rand_int(rng, 6, 12) : rand_int(rng, 1, 4);
            for (int k = 0; k < n_in; ++k)
                tx.inputs.emplace_back(seen_or_pool(rng),
                                       Satoshi::from_value(rand_i64(rng, 1, 10'0000'0000)));

            double shape = std::uniform_real_distribution<double>(0, 1)(rng);
            auto push_out = [&](const AddressId& a) {
                tx.outputs.emplace_back(a, Satoshi::from_value(rand_i64(rng, 1, 5'0000'0000)));
            };
            if (shape < 0.40) {
                // Change shape: one previously-seen payee, one fresh address.
                push_out(seen.empty() ? any_pool(rng)
                                      : seen[rand_int(rng, 0, static_cast<int>(seen.size()) - 1)]);
                if (auto f = fresh()) push_out(*f);
                else push_out(any_pool(rng));
            } else if (shape < 0.55) {
                // Ambiguous: two fresh outputs.
                auto f1 = fresh();
                auto f2 = fresh();
                push_out(f1 ? *f1 : any_pool(rng));
                push_out(f2 ? *f2 : any_pool(rng));
            } else if (shape < 0.65) {
                // Self-change back to an input address.
                push_out(tx.inputs.front().first);
                if (auto f = fresh()) push_out(*f);
                else push_out(any_pool(rng));
            } else {
                int n_out = rand_int(rng, 1, 3);
                for (int k = 0; k < n_out; ++k) push_out(seen_or_pool(rng));
            }
        }
        note_seen(tx);
        fixture.universe.txs.push_back(std::move(tx));
    }

    std::set<AddressId> seed_set;
    int n_seeds = rand_int(rng, 1, 3);
    while (static_cast<int>(seed_set.size()) < n_seeds) seed_set.insert(any_pool(rng));
    fixture.seeds.assign(seed_set.begin(), seed_set.end());
    return fixture;
}

}  // namespace rt_test
