#include "ransomtrace/ingest.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

namespace ransomtrace {

IngestReport ingest_cluster(Provider& provider, LedgerStore& store, const ClusterSet& cluster,
                            int parallelism) {
    std::set<AddressId> tracked(cluster.addresses().begin(), cluster.addresses().end());
    std::vector<AddressId> members(tracked.begin(), tracked.end());

    IngestReport report;
    std::mutex report_mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < members.size(); i = next.fetch_add(1)) {
            {
                std::lock_guard lock(failure_mutex);
                if (failure) return;
            }
            try {
                provider.fetch_address_transactions(members[i], [&](const TxRecord& tx) {
                    // Check-then-insert must be atomic for exact counts;
                    // fetches stay parallel, writes funnel through here.
                    std::lock_guard lock(report_mutex);
                    bool existed = store.transaction(tx.hash).has_value();
                    int credited = store.insert_tx(tx, tracked);
                    ++report.tx_seen;
                    if (!existed) ++report.tx_new;
                    report.payments_new += credited;
                });
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int threads = std::max(1, std::min<int>(parallelism, static_cast<int>(members.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

}  // namespace ransomtrace
