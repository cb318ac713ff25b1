#pragma once

#include <filesystem>
#include <map>
#include <optional>

#include "ransomtrace/records.hpp"

namespace ransomtrace {

using PriceSeries = std::map<Date, DailyPrice>;

/// Loads a `date,low,avg,high` CSV of day-to-day BTC-USD quotes.
/// Quotes carry at most four fractional digits; low <= avg <= high and
/// date uniqueness are enforced per row.
PriceSeries load_price_series(const std::filesystem::path& path);

std::optional<DailyPrice> price_on(const PriceSeries& series, Date d);

}  // namespace ransomtrace
