#pragma once

#include <filesystem>
#include <vector>

#include "ransomtrace/classify.hpp"
#include "ransomtrace/records.hpp"

namespace ransomtrace {

struct CampaignSummary {
    struct Triple {
        std::int64_t payments = 0;
        Satoshi btc;
        UsdAmount usd_avg;
    };
    struct RuleRow {
        std::string label;
        Date start_date;
        Date end_date;
        std::int64_t payments = 0;
        Satoshi btc;
        UsdAmount usd_avg;
    };

    Triple overall;  // every credit to the cluster
    Triple ransom;
    Triple non_ransom;
    std::int64_t unclassifiable_payments = 0;
    Satoshi unclassifiable_btc;
    std::vector<RuleRow> per_rule;  // in schedule declaration order
};

/// Aggregates a classification into the campaign's headline triples
/// and the per-rule breakdown. USD totals are summed per payment at
/// the day-average price and rounded once at display; payments without
/// a price quote are counted and totalled in BTC but carry no USD
/// value, so the overall USD covers priced payments only.
CampaignSummary summarize(const ClassificationResult& result,
                          const std::vector<RansomRule>& rules);

struct DailySeriesPoint {
    Date date;
    std::int64_t ransom_count = 0;
    Satoshi btc;
    UsdAmount usd_avg;
};

/// Ransoms grouped by payment day, date-sorted. Gap days are omitted
/// unless `dense`, which zero-fills between the first and last day.
std::vector<DailySeriesPoint> daily_series(const ClassificationResult& result,
                                           bool dense = false);

struct AddressAggregate {
    AddressId address;
    std::int64_t ransom_count = 0;
    Satoshi btc;
};

/// Per-address ransom totals, address-sorted. Addresses that received
/// no ransom do not appear.
std::vector<AddressAggregate> per_address(const ClassificationResult& result);

enum class CdfMetric { count, btc };

/// One step of an empirical CDF. The fraction is exact:
/// cum_count / total aggregates with metric value <= x.
struct CdfPoint {
    std::int64_t x = 0;  // ransom count, or satoshis for the btc metric
    std::int64_t cum_count = 0;
    std::int64_t total = 0;

    /// Decimal rendering with 9 fractional digits; the last point of a
    /// CDF renders exactly "1.000000000".
    std::string fraction_string() const;
};

std::vector<CdfPoint> cdf(const std::vector<AddressAggregate>& aggregates, CdfMetric metric);

// --- CSV artifacts ---

void write_summary_csv(const std::filesystem::path& path, const CampaignSummary& summary);
void write_per_rule_csv(const std::filesystem::path& path, const CampaignSummary& summary);
void write_daily_csv(const std::filesystem::path& path,
                     const std::vector<DailySeriesPoint>& series);
void write_per_address_csv(const std::filesystem::path& path,
                           const std::vector<AddressAggregate>& aggregates);
void write_cdf_csv(const std::filesystem::path& path, const std::vector<CdfPoint>& points,
                   CdfMetric metric);
void write_classified_csv(const std::filesystem::path& path, const ClassificationResult& result);
void write_unclassifiable_csv(const std::filesystem::path& path,
                              const ClassificationResult& result);

}  // namespace ransomtrace
