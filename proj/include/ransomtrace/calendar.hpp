#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <tuple>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

/// A UTC calendar day. Everything in the toolkit buckets by the GMT
/// date a transaction was confirmed on.
class Date {
public:
    constexpr Date() = default;

    static Date parse(std::string_view iso);  // "YYYY-MM-DD", validated
    static Date from_ymd(int year, int month, int day);

    int year() const { return year_; }
    int month() const { return month_; }
    int day() const { return day_; }

    std::string to_string() const;

    /// Days since 1970-01-01; used for dense series fills.
    long day_number() const;
    Date next_day() const;

    auto operator<=>(const Date&) const = default;

private:
    Date(int y, int m, int d) : year_(y), month_(m), day_(d) {}

    int year_ = 1970;
    int month_ = 1;
    int day_ = 1;
};

class TimeOfDay {
public:
    constexpr TimeOfDay() = default;

    static TimeOfDay parse(std::string_view hms);  // "HH:MM:SS"
    static TimeOfDay from_hms(int hour, int minute, int second);

    std::string to_string() const;

    auto operator<=>(const TimeOfDay&) const = default;

private:
    TimeOfDay(int h, int m, int s) : hour_(h), minute_(m), second_(s) {}

    int hour_ = 0;
    int minute_ = 0;
    int second_ = 0;
};

/// Global ordering anchor for on-chain events: GMT date, then time,
/// then lexicographic transaction hash as the deterministic tie-break.
struct Moment {
    Date date;
    TimeOfDay time;
    std::string tx_hash;

    auto operator<=>(const Moment&) const = default;
};

struct DateRange {
    Date first;  // inclusive
    Date last;   // inclusive

    bool contains(Date d) const { return first <= d && d <= last; }
};

}  // namespace ransomtrace
