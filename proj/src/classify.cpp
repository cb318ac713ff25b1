#include "ransomtrace/classify.hpp"

#include <algorithm>
#include <set>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

Satoshi transaction_fee(const TxRecord& tx) {
    if (tx.is_coinbase)
        throw CoinbaseFeeUndefined("coinbase tx " + tx.hash + " has no fee");
    Satoshi in = tx.total_inputs();
    Satoshi out = tx.total_outputs();
    if (out > in)
        throw NegativeFee("tx " + tx.hash + " spends " + std::to_string(in.value()) +
                          " but pays out " + std::to_string(out.value()));
    return in - out;
}

UsdAmount usd_value(Satoshi amount, const DailyPrice& price, Quote which) {
    const UsdAmount& quote = which == Quote::low ? price.low
                             : which == Quote::avg ? price.avg
                                                   : price.high;
    __int128 product = static_cast<__int128>(amount.value()) * quote.pico();
    if (product % kSatoshiPerBtc != 0)
        throw Error("price quote for " + price.date.to_string() +
                    " is too precise for exact satoshi valuation");
    return UsdAmount::from_pico(product / kSatoshiPerBtc);
}

namespace {

// Band test on raw pico values so the fee-adjusted demand may go
// negative without tripping UsdAmount's non-negativity.
bool within(__int128 lo, __int128 x, __int128 hi) { return lo <= x && x <= hi; }

}  // namespace

std::optional<ClassifiedPayment> classify_payment(const PaymentEvent& payment, const TxRecord& tx,
                                                  const std::vector<RansomRule>& rules,
                                                  const DailyPrice& price, FeeBandMode mode) {
    if (tx.hash != payment.tx_hash)
        throw Error("classify_payment: transaction does not match payment");
    if (price.date != payment.gmt_date)
        throw MissingPrice("no price quote for " + payment.gmt_date.to_string());

    Satoshi received = payment.amount;
    // Coinbase credits have no spender and therefore no fee; only the
    // fee-free branches can apply to them.
    std::optional<Satoshi> fee;
    if (!tx.is_coinbase) fee = transaction_fee(tx);

    for (const RansomRule& rule : rules) {
        if (!rule.active_on(payment.gmt_date)) continue;

        std::optional<MatchBranch> branch;
        if (rule.denomination == Denomination::btc) {
            Satoshi demanded = rule.btc_amount();
            if (received == demanded) {
                branch = MatchBranch::btc_exact;
            } else if (fee && received + *fee == demanded) {
                branch = MatchBranch::btc_minus_fee;
            }
        } else {
            __int128 demanded = rule.usd_amount().pico();
            __int128 value_low = usd_value(received, price, Quote::low).pico();
            __int128 value_high = usd_value(received, price, Quote::high).pico();
            if (within(value_low, demanded, value_high)) {
                branch = MatchBranch::usd_band;
            } else if (fee) {
                if (mode == FeeBandMode::fee_to_usd) {
                    __int128 fee_usd = usd_value(*fee, price, Quote::avg).pico();
                    if (within(value_low, demanded - fee_usd, value_high))
                        branch = MatchBranch::usd_band_minus_fee;
                } else {
                    Satoshi gross = received + *fee;
                    if (within(usd_value(gross, price, Quote::low).pico(), demanded,
                               usd_value(gross, price, Quote::high).pico()))
                        branch = MatchBranch::usd_band_minus_fee;
                }
            }
        }
        if (branch) {
            return ClassifiedPayment{payment, rule.label, *branch,
                                     usd_value(received, price, Quote::avg)};
        }
    }
    return std::nullopt;
}

std::int64_t ClassificationResult::total_count() const {
    return static_cast<std::int64_t>(ransoms.size()) + non_ransom_count +
           static_cast<std::int64_t>(unclassifiable.size());
}

Satoshi ClassificationResult::total_btc() const {
    return ransom_btc() + non_ransom_btc + unclassifiable_btc;
}

Satoshi ClassificationResult::ransom_btc() const {
    Satoshi sum;
    for (const auto& r : ransoms) sum += r.payment.amount;
    return sum;
}

UsdAmount ClassificationResult::ransom_usd_avg() const {
    UsdAmount sum;
    for (const auto& r : ransoms) sum += r.usd_value_avg;
    return sum;
}

ClassificationResult classify_cluster(const LedgerStore& store, const ClusterSet& cluster,
                                      const CampaignConfig& config, const PriceSeries& prices) {
    std::set<AddressId> members(cluster.addresses().begin(), cluster.addresses().end());

    struct Keyed {
        Moment moment;
        std::string address;
        std::optional<ClassifiedPayment> classified;
        std::optional<UnclassifiablePayment> failed;
    };
    std::vector<Keyed> keyed;
    ClassificationResult result;

    for (const AddressId& member : members) {
        for (const PaymentEvent& payment : store.payments_to(member)) {
            std::optional<TxRecord> tx = store.transaction(payment.tx_hash);
            if (!tx)
                throw StorageFailure("payment row references unknown tx " + payment.tx_hash);
            Moment moment = tx->moment();

            std::optional<DailyPrice> price = price_on(prices, payment.gmt_date);
            if (!price) {
                result.unclassifiable_btc += payment.amount;
                keyed.push_back({moment, member.text(), std::nullopt,
                                 UnclassifiablePayment{payment, "no price for " +
                                                                    payment.gmt_date.to_string()}});
                continue;
            }
            std::optional<ClassifiedPayment> match =
                classify_payment(payment, *tx, config.rules, *price, config.fee_band_mode);
            if (match) {
                keyed.push_back({moment, member.text(), std::move(match), std::nullopt});
            } else {
                ++result.non_ransom_count;
                result.non_ransom_btc += payment.amount;
                result.non_ransom_usd_avg += usd_value(payment.amount, *price, Quote::avg);
            }
        }
    }

    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.moment, a.address) < std::tie(b.moment, b.address);
    });
    for (Keyed& k : keyed) {
        if (k.classified) result.ransoms.push_back(std::move(*k.classified));
        else result.unclassifiable.push_back(std::move(*k.failed));
    }
    return result;
}

}  // namespace ransomtrace
