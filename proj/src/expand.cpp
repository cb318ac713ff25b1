#include "ransomtrace/expand.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

std::set<AddressId> multi_input_addresses(const TxRecord& tx) {
    if (tx.is_coinbase)
        throw CoinbaseInput("multi-input heuristic is undefined for coinbase tx " + tx.hash);
    std::set<AddressId> out;
    for (const auto& [addr, amount] : tx.inputs) out.insert(addr);
    return out;
}

std::optional<AddressId> detect_shadow(const TxRecord& tx, const SeenBefore& seen_before) {
    std::set<AddressId> outputs;
    for (const auto& [addr, amount] : tx.outputs) outputs.insert(addr);
    if (outputs.size() != 2) return std::nullopt;
    // Change paid back to an input address is not a fresh shadow address.
    for (const AddressId& addr : outputs)
        if (tx.has_input(addr)) return std::nullopt;

    std::optional<AddressId> fresh;
    int unseen = 0;
    for (const AddressId& addr : outputs) {
        if (!seen_before(addr)) {
            ++unseen;
            fresh = addr;
        }
    }
    if (unseen != 1) return std::nullopt;
    return fresh;
}

namespace {

// Memoizing view over the provider. Fetches each address's spends and
// summary once; safe to fill from several threads.
class ProviderCache {
public:
    explicit ProviderCache(Provider& provider) : provider_(provider) {}

    const std::vector<TxRecord>& transactions(const AddressId& address) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = tx_cache_.find(address); it != tx_cache_.end()) return it->second;
        }
        std::vector<TxRecord> txs = provider_.collect_transactions(address);
        std::lock_guard lock(mutex_);
        return tx_cache_.emplace(address, std::move(txs)).first->second;
    }

    bool seen_before(const AddressId& address, const Moment& moment) {
        std::optional<Moment> first;
        {
            std::lock_guard lock(mutex_);
            if (auto it = seen_cache_.find(address); it != seen_cache_.end()) {
                first = it->second;
                return first && *first < moment;
            }
        }
        AddressSummary s = provider_.fetch_address_summary(address);
        if (s.first_seen) first = s.first_seen->moment();
        std::lock_guard lock(mutex_);
        seen_cache_.emplace(address, first);
        return first && *first < moment;
    }

    void prefetch(const std::vector<AddressId>& addresses, int parallelism) {
        if (parallelism <= 1 || addresses.size() <= 1) {
            for (const AddressId& a : addresses) transactions(a);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < addresses.size();
                 i = next.fetch_add(1)) {
                try {
                    transactions(addresses[i]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        int threads = std::min<int>(parallelism, static_cast<int>(addresses.size()));
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

private:
    Provider& provider_;
    std::mutex mutex_;
    std::map<AddressId, std::vector<TxRecord>> tx_cache_;
    std::map<AddressId, std::optional<Moment>> seen_cache_;
};

}  // namespace

ClusterSet expand(const std::vector<AddressId>& seeds, Provider& provider,
                  const ExpansionConfig& config, const std::string& campaign_name) {
    if (seeds.empty()) throw Error("expansion needs at least one seed address");

    std::map<AddressId, ClusterMember> members;
    for (const AddressId& s : seeds)
        members.emplace(s, ClusterMember{s, Provenance::seed, 0});

    ProviderCache cache(provider);
    auto build_result = [&] {
        ClusterSet cluster{campaign_name, {}};
        cluster.members.reserve(members.size());
        for (const auto& [addr, member] : members) cluster.members.push_back(member);
        cluster.sort();
        return cluster;
    };

    int round = 0;
    while (!config.max_rounds || round < *config.max_rounds) {
        ++round;

        std::vector<AddressId> scan;
        scan.reserve(members.size());
        for (const auto& [addr, member] : members) scan.push_back(addr);
        cache.prefetch(scan, config.parallelism);

        // Merge at the round barrier: collect the full M and C sets
        // before touching the member map, so results cannot depend on
        // scheduling within the round.
        std::set<AddressId> from_inputs;
        std::set<AddressId> from_shadow;
        for (const AddressId& member : scan) {
            for (const TxRecord& tx : cache.transactions(member)) {
                if (tx.is_coinbase) continue;
                if (!tx.has_input(member)) continue;  // only spends of the member
                std::set<AddressId> inputs = multi_input_addresses(tx);
                if (!config.max_inputs_per_tx || inputs.size() <= *config.max_inputs_per_tx)
                    from_inputs.insert(inputs.begin(), inputs.end());
                if (config.shadow_detection) {
                    auto shadow = detect_shadow(tx, [&](const AddressId& a) {
                        return cache.seen_before(a, tx.moment());
                    });
                    if (shadow) from_shadow.insert(*shadow);
                }
            }
        }

        bool grew = false;
        for (const AddressId& addr : from_inputs) {
            if (members.emplace(addr, ClusterMember{addr, Provenance::multi_input, round}).second)
                grew = true;
        }
        for (const AddressId& addr : from_shadow) {
            if (members.emplace(addr, ClusterMember{addr, Provenance::shadow, round}).second)
                grew = true;
        }
        if (!grew) break;  // fixed point

        if (config.max_cluster_size && members.size() > *config.max_cluster_size) {
            throw ClusterSizeExceeded("cluster exceeded size limit of " +
                                          std::to_string(*config.max_cluster_size) + " (" +
                                          std::to_string(members.size()) + " members)",
                                      build_result());
        }
    }
    return build_result();
}

}  // namespace ransomtrace
