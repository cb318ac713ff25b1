#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ransomtrace/address.hpp"
#include "ransomtrace/calendar.hpp"
#include "ransomtrace/satoshi.hpp"
#include "ransomtrace/usd.hpp"

namespace ransomtrace {

/// One confirmed transaction as the ledger sees it: the hash, the
/// ordered input and output (address, amount) pairs, and the GMT
/// timestamp of confirmation. Coinbase transactions have no inputs.
struct TxRecord {
    std::string hash;  // 64-char lowercase hex
    std::vector<std::pair<AddressId, Satoshi>> inputs;
    std::vector<std::pair<AddressId, Satoshi>> outputs;
    Date gmt_date;
    TimeOfDay gmt_time;
    bool is_coinbase = false;

    Moment moment() const { return Moment{gmt_date, gmt_time, hash}; }

    /// Enforces the structural invariants: hash shape, coinbase <=>
    /// empty inputs. Amounts are non-negative by construction.
    void validate() const;

    Satoshi total_inputs() const;
    Satoshi total_outputs() const;
    /// Sum of all outputs paying `address` (zero when absent).
    Satoshi credited_to(const AddressId& address) const;
    bool has_input(const AddressId& address) const;
    bool has_output(const AddressId& address) const;

    bool operator==(const TxRecord&) const = default;
};

bool is_tx_hash(std::string_view text);

/// A credit of satoshis to one tracked address within one transaction;
/// the unit the classifier operates on. `amount` is the sum of every
/// output of the transaction paying `address`.
struct PaymentEvent {
    std::string tx_hash;
    AddressId address;
    Satoshi amount;
    Date gmt_date;
    bool address_was_input = false;

    bool operator==(const PaymentEvent&) const = default;
};

struct DailyPrice {
    Date date;
    UsdAmount low;   // per BTC
    UsdAmount avg;   // per BTC
    UsdAmount high;  // per BTC

    /// low <= avg <= high, rejected on load otherwise.
    void validate() const;
};

enum class Denomination { btc, usd };

/// One demand line of a campaign schedule: a fixed BTC amount or a USD
/// figure to be met in bitcoin, active over an inclusive date window.
struct RansomRule {
    std::string label;
    Denomination denomination = Denomination::btc;
    std::variant<Satoshi, UsdAmount> amount;
    Date start_date;  // inclusive
    Date end_date;    // inclusive

    bool active_on(Date d) const { return start_date <= d && d <= end_date; }
    Satoshi btc_amount() const { return std::get<Satoshi>(amount); }
    UsdAmount usd_amount() const { return std::get<UsdAmount>(amount); }

    void validate() const;
};

enum class Provenance { seed, multi_input, shadow };

std::string to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct ClusterMember {
    AddressId address;
    Provenance provenance = Provenance::seed;
    int discovery_round = 0;

    bool operator==(const ClusterMember&) const = default;
};

/// The evolving set of addresses attributed to one campaign. Members
/// are unique by address and remember how and when they were found.
struct ClusterSet {
    std::string campaign;
    std::vector<ClusterMember> members;

    bool contains(const AddressId& a) const;
    std::vector<AddressId> addresses() const;
    /// Orders members by (discovery_round, address) for stable output.
    void sort();
};

enum class MatchBranch { btc_exact, btc_minus_fee, usd_band, usd_band_minus_fee };

std::string to_string(MatchBranch b);
MatchBranch match_branch_from_string(std::string_view s);

struct ClassifiedPayment {
    PaymentEvent payment;
    std::string rule_label;
    MatchBranch matched_branch = MatchBranch::btc_exact;
    UsdAmount usd_value_avg;  // payment.amount x avg price of payment day
};

/// How Eq-style USD band matching treats the transaction fee. The fee
/// is a BTC quantity while the demand is USD; `fee_to_usd` converts the
/// fee at the day's average price and subtracts it from the demand,
/// `value_plus_fee` instead values (received + fee) against the band.
enum class FeeBandMode { fee_to_usd, value_plus_fee };

std::string to_string(FeeBandMode m);
FeeBandMode fee_band_mode_from_string(std::string_view s);

struct CampaignConfig {
    std::string name;
    std::vector<AddressId> seeds;
    std::vector<RansomRule> rules;  // declaration order is match priority
    FeeBandMode fee_band_mode = FeeBandMode::fee_to_usd;

    void validate() const;
};

}  // namespace ransomtrace
