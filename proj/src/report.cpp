#include "ransomtrace/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ransomtrace/csv.hpp"
#include "ransomtrace/errors.hpp"

namespace ransomtrace {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

CampaignSummary summarize(const ClassificationResult& result,
                          const std::vector<RansomRule>& rules) {
    CampaignSummary s;
    s.ransom = {static_cast<std::int64_t>(result.ransoms.size()), result.ransom_btc(),
                result.ransom_usd_avg()};
    s.non_ransom = {result.non_ransom_count, result.non_ransom_btc, result.non_ransom_usd_avg};
    s.unclassifiable_payments = static_cast<std::int64_t>(result.unclassifiable.size());
    s.unclassifiable_btc = result.unclassifiable_btc;
    s.overall = {result.total_count(), result.total_btc(),
                 s.ransom.usd_avg + s.non_ransom.usd_avg};

    std::map<std::string, CampaignSummary::RuleRow> by_label;
    for (const RansomRule& rule : rules)
        by_label.emplace(rule.label, CampaignSummary::RuleRow{rule.label, rule.start_date,
                                                              rule.end_date, 0, Satoshi{},
                                                              UsdAmount{}});
    for (const ClassifiedPayment& r : result.ransoms) {
        auto it = by_label.find(r.rule_label);
        if (it == by_label.end())
            throw Error("classified payment references unknown rule '" + r.rule_label + "'");
        it->second.payments += 1;
        it->second.btc += r.payment.amount;
        it->second.usd_avg += r.usd_value_avg;
    }
    for (const RansomRule& rule : rules) s.per_rule.push_back(by_label.at(rule.label));
    return s;
}

std::vector<DailySeriesPoint> daily_series(const ClassificationResult& result, bool dense) {
    std::map<Date, DailySeriesPoint> by_day;
    for (const ClassifiedPayment& r : result.ransoms) {
        auto& point = by_day
                          .emplace(r.payment.gmt_date,
                                   DailySeriesPoint{r.payment.gmt_date, 0, Satoshi{}, UsdAmount{}})
                          .first->second;
        point.ransom_count += 1;
        point.btc += r.payment.amount;
        point.usd_avg += r.usd_value_avg;
    }
    std::vector<DailySeriesPoint> out;
    if (by_day.empty()) return out;
    if (!dense) {
        for (const auto& [date, point] : by_day) out.push_back(point);
        return out;
    }
    for (Date d = by_day.begin()->first;; d = d.next_day()) {
        auto it = by_day.find(d);
        out.push_back(it != by_day.end() ? it->second
                                         : DailySeriesPoint{d, 0, Satoshi{}, UsdAmount{}});
        if (d == by_day.rbegin()->first) break;
    }
    return out;
}

std::vector<AddressAggregate> per_address(const ClassificationResult& result) {
    std::map<AddressId, AddressAggregate> by_address;
    for (const ClassifiedPayment& r : result.ransoms) {
        auto& agg = by_address
                        .emplace(r.payment.address,
                                 AddressAggregate{r.payment.address, 0, Satoshi{}})
                        .first->second;
        agg.ransom_count += 1;
        agg.btc += r.payment.amount;
    }
    std::vector<AddressAggregate> out;
    out.reserve(by_address.size());
    for (const auto& [address, agg] : by_address) out.push_back(agg);
    return out;
}

std::string CdfPoint::fraction_string() const {
    // Rendered half-up at 9 digits; the exact fraction lives in
    // cum_count/total.
    __int128 scaled = (static_cast<__int128>(cum_count) * 1'000'000'000 + total / 2) / total;
    std::string whole = std::to_string(static_cast<std::int64_t>(scaled / 1'000'000'000));
    std::string frac = std::to_string(static_cast<std::int64_t>(scaled % 1'000'000'000));
    return whole + "." + std::string(9 - frac.size(), '0') + frac;
}

std::vector<CdfPoint> cdf(const std::vector<AddressAggregate>& aggregates, CdfMetric metric) {
    if (aggregates.empty()) throw EmptyInput("cannot build a CDF from zero addresses");

    std::vector<std::int64_t> values;
    values.reserve(aggregates.size());
    for (const AddressAggregate& a : aggregates)
        values.push_back(metric == CdfMetric::count ? a.ransom_count : a.btc.value());
    std::sort(values.begin(), values.end());

    std::vector<CdfPoint> points;
    auto total = static_cast<std::int64_t>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        bool last_of_value = i + 1 == values.size() || values[i + 1] != values[i];
        if (last_of_value)
            points.push_back(CdfPoint{values[i], static_cast<std::int64_t>(i + 1), total});
    }
    return points;
}

void write_summary_csv(const std::filesystem::path& path, const CampaignSummary& summary) {
    auto out = open_out(path);
    out << "scope,payments,btc,usd_avg\n";
    auto row = [&](const char* scope, const CampaignSummary::Triple& t) {
        out << csv::join_row({scope, std::to_string(t.payments), t.btc.to_btc(),
                              t.usd_avg.display()})
            << "\n";
    };
    row("overall", summary.overall);
    row("ransom", summary.ransom);
    row("non_ransom", summary.non_ransom);
    out << csv::join_row({"unclassifiable", std::to_string(summary.unclassifiable_payments),
                          summary.unclassifiable_btc.to_btc(), ""})
        << "\n";
}

void write_per_rule_csv(const std::filesystem::path& path, const CampaignSummary& summary) {
    auto out = open_out(path);
    out << "rule_label,start_date,end_date,payments,btc,usd_avg\n";
    for (const auto& row : summary.per_rule) {
        out << csv::join_row({row.label, row.start_date.to_string(), row.end_date.to_string(),
                              std::to_string(row.payments), row.btc.to_btc(),
                              row.usd_avg.display()})
            << "\n";
    }
}

void write_daily_csv(const std::filesystem::path& path,
                     const std::vector<DailySeriesPoint>& series) {
    auto out = open_out(path);
    out << "date,ransom_count,btc,usd_avg\n";
    for (const auto& point : series) {
        out << csv::join_row({point.date.to_string(), std::to_string(point.ransom_count),
                              point.btc.to_btc(), point.usd_avg.display()})
            << "\n";
    }
}

void write_per_address_csv(const std::filesystem::path& path,
                           const std::vector<AddressAggregate>& aggregates) {
    auto out = open_out(path);
    out << "address,ransom_count,btc\n";
    for (const auto& agg : aggregates) {
        out << csv::join_row({agg.address.text(), std::to_string(agg.ransom_count),
                              agg.btc.to_btc()})
            << "\n";
    }
}

void write_cdf_csv(const std::filesystem::path& path, const std::vector<CdfPoint>& points,
                   CdfMetric metric) {
    auto out = open_out(path);
    out << (metric == CdfMetric::count ? "ransom_count" : "btc") << ",cumulative_fraction\n";
    for (const auto& p : points) {
        std::string x = metric == CdfMetric::count ? std::to_string(p.x)
                                                   : Satoshi::from_value(p.x).to_btc();
        out << csv::join_row({x, p.fraction_string()}) << "\n";
    }
}

void write_classified_csv(const std::filesystem::path& path, const ClassificationResult& result) {
    auto out = open_out(path);
    out << "tx_hash,address,date,amount_sat,rule_label,branch,usd_avg\n";
    for (const ClassifiedPayment& r : result.ransoms) {
        out << csv::join_row({r.payment.tx_hash, r.payment.address.text(),
                              r.payment.gmt_date.to_string(),
                              std::to_string(r.payment.amount.value()), r.rule_label,
                              to_string(r.matched_branch), r.usd_value_avg.display()})
            << "\n";
    }
}

void write_unclassifiable_csv(const std::filesystem::path& path,
                              const ClassificationResult& result) {
    auto out = open_out(path);
    out << "tx_hash,address,date,amount_sat,reason\n";
    for (const UnclassifiablePayment& u : result.unclassifiable) {
        out << csv::join_row({u.payment.tx_hash, u.payment.address.text(),
                              u.payment.gmt_date.to_string(),
                              std::to_string(u.payment.amount.value()), u.reason})
            << "\n";
    }
}

}  // namespace ransomtrace
