#pragma once

#include <optional>
#include <vector>

#include "ransomtrace/ledger_store.hpp"
#include "ransomtrace/price_series.hpp"
#include "ransomtrace/records.hpp"

namespace ransomtrace {

/// Transaction fee: total amount being spent minus total amount being
/// received. Undefined for coinbase; negative means malformed data.
Satoshi transaction_fee(const TxRecord& tx);

/// Values a satoshi amount at the selected quote of the day,
/// decimal-exact: amount/1e8 x quote.
UsdAmount usd_value(Satoshi amount, const DailyPrice& price, Quote which);

/// Tests one payment against a campaign schedule. Rules whose window
/// excludes the payment date are skipped; the first matching rule in
/// declaration order wins and the satisfied branch is recorded.
///
/// A BTC demand d_b matches when the received amount r_b equals d_b
/// exactly or equals d_b minus the transaction fee. A USD demand d_u
/// matches when d_u lies within [r_b x low, r_b x high], or when the
/// fee-adjusted demand does (see FeeBandMode for how the BTC fee meets
/// the USD demand).
std::optional<ClassifiedPayment> classify_payment(const PaymentEvent& payment, const TxRecord& tx,
                                                  const std::vector<RansomRule>& rules,
                                                  const DailyPrice& price,
                                                  FeeBandMode mode = FeeBandMode::fee_to_usd);

struct UnclassifiablePayment {
    PaymentEvent payment;
    std::string reason;
};

/// Every payment to a cluster, partitioned. Totals conserve exactly:
/// ransom + non-ransom + unclassifiable satoshis equal every satoshi
/// credited to cluster members.
struct ClassificationResult {
    std::vector<ClassifiedPayment> ransoms;
    std::int64_t non_ransom_count = 0;
    Satoshi non_ransom_btc;
    UsdAmount non_ransom_usd_avg;
    std::vector<UnclassifiablePayment> unclassifiable;
    Satoshi unclassifiable_btc;

    std::int64_t total_count() const;
    Satoshi total_btc() const;
    Satoshi ransom_btc() const;
    UsdAmount ransom_usd_avg() const;
};

/// Classifies every payment of every cluster member in the store.
/// Payments on days with no price quote land in `unclassifiable`
/// rather than being dropped or crashing the run.
ClassificationResult classify_cluster(const LedgerStore& store, const ClusterSet& cluster,
                                      const CampaignConfig& config, const PriceSeries& prices);

}  // namespace ransomtrace
