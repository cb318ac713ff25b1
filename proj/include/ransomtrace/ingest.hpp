#pragma once

#include <cstdint>

#include "ransomtrace/ledger_store.hpp"
#include "ransomtrace/provider.hpp"

namespace ransomtrace {

struct IngestReport {
    std::int64_t tx_seen = 0;       // records yielded, duplicates across members included
    std::int64_t tx_new = 0;        // transactions not previously stored
    std::int64_t payments_new = 0;  // new credited payment rows

    bool operator==(const IngestReport&) const = default;
};

/// Fetches and stores the full transaction history of every cluster
/// member. Each transaction is persisted as it arrives, so an
/// interrupted run can simply be re-run; convergence to the same store
/// state is guaranteed by the store's hash-keyed deduplication.
IngestReport ingest_cluster(Provider& provider, LedgerStore& store, const ClusterSet& cluster,
                            int parallelism = 1);

}  // namespace ransomtrace
