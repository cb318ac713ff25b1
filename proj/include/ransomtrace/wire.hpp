#pragma once

#include <nlohmann/json_fwd.hpp>

#include "ransomtrace/provider.hpp"
#include "ransomtrace/records.hpp"

namespace ransomtrace::wire {

// JSON shapes shared by the fixture snapshots and the HTTP provider's
// wire format. Amounts are integer satoshis; anything else is rejected
// at this boundary.
//
//   transaction:
//     {"hash": "...64 hex...",
//      "inputs":  [{"address": "...", "value_sat": 123}, ...],
//      "outputs": [{"address": "...", "value_sat": 456}, ...],
//      "gmt_date": "YYYY-MM-DD", "gmt_time": "HH:MM:SS",
//      "is_coinbase": false}            // optional, must match inputs
//
//   summary:
//     {"address": "...", "total_tx_count": 3,
//      "first_seen": {"date": "...", "time": "...", "tx_hash": "..."}}
//                                        // null when never seen
//
// A fixture directory holds one "<address>.json" file per address
// ({"address": ..., "txs": [transaction...]}) plus "summaries.json"
// ({"addresses": {"<address>": summary, ...}}).

TxRecord tx_from_json(const nlohmann::json& j);
nlohmann::json tx_to_json(const TxRecord& tx);

AddressSummary summary_from_json(const nlohmann::json& j);
nlohmann::json summary_to_json(const AddressSummary& s);

}  // namespace ransomtrace::wire
