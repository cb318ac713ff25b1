#pragma once

#include <functional>
#include <optional>
#include <set>

#include "ransomtrace/provider.hpp"
#include "ransomtrace/records.hpp"

namespace ransomtrace {

struct ExpansionConfig {
    std::optional<int> max_rounds;                 // absent: run to the fixed point
    std::optional<std::size_t> max_cluster_size;   // safety valve
    bool shadow_detection = true;
    /// When set, transactions with more distinct input addresses than
    /// this are ignored by the multi-input heuristic. Bounds the
    /// contamination a mixer-shaped transaction can cause; off by
    /// default to stay faithful to the stated heuristics.
    std::optional<std::size_t> max_inputs_per_tx;
    int parallelism = 1;
};

/// Safety valve tripped: expansion stopped early. The members found up
/// to that point ride along with the error.
class ClusterSizeExceeded : public Error {
public:
    ClusterSizeExceeded(std::string what, ClusterSet partial)
        : Error(std::move(what)), partial_(std::move(partial)) {}
    const ClusterSet& partial() const { return partial_; }

private:
    ClusterSet partial_;
};

/// The distinct input addresses of a non-coinbase transaction; by the
/// multi-input heuristic they are managed by the same user.
std::set<AddressId> multi_input_addresses(const TxRecord& tx);

using SeenBefore = std::function<bool(const AddressId&)>;

/// Change-address heuristic: when a transaction has exactly two
/// distinct output addresses, exactly one of which has never been seen
/// on chain strictly before the transaction, that fresh address is the
/// spender's change. Transactions paying change back to one of their
/// own input addresses are not candidates. `seen_before` must answer
/// relative to the chain state strictly before the transaction.
std::optional<AddressId> detect_shadow(const TxRecord& tx, const SeenBefore& seen_before);

/// Round-synchronous fixed-point expansion of `seeds` under the two
/// heuristics. Each discovered member carries its provenance and the
/// round it first appeared in; seeds are round 0. Deterministic given
/// a deterministic provider, regardless of intra-round scheduling.
ClusterSet expand(const std::vector<AddressId>& seeds, Provider& provider,
                  const ExpansionConfig& config = {}, const std::string& campaign_name = "");

}  // namespace ransomtrace
