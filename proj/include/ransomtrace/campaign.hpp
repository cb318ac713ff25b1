#pragma once

#include <filesystem>

#include "ransomtrace/classify.hpp"
#include "ransomtrace/records.hpp"

namespace ransomtrace {

/// Loads a campaign config file:
///
///   {"name": "...",
///    "seeds": ["1...", ...],
///    "rules": [{"label": "2 BTC", "denomination": "BTC", "amount": "2",
///               "start": "2013-09-05", "end": "2013-11-11"}, ...],
///    "fee_band_mode": "fee_to_usd"}        // optional
///
/// BTC amounts are decimal BTC strings (exact satoshis), USD amounts
/// decimal dollar strings. Rule order in the file is match priority.
CampaignConfig load_campaign_config(const std::filesystem::path& path);

// Cluster CSV (`address,provenance,round`) written by the expand stage
// and consumed by ingest/classify.
void save_cluster_csv(const std::filesystem::path& path, const ClusterSet& cluster);
ClusterSet load_cluster_csv(const std::filesystem::path& path, const std::string& campaign_name);

// Classification JSON handed from the classify stage to the report
// stage; lossless (USD values kept at full internal precision).
void save_classification(const std::filesystem::path& path, const ClassificationResult& result);
ClassificationResult load_classification(const std::filesystem::path& path);

}  // namespace ransomtrace
