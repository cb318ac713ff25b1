#include "ransomtrace/calendar.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace ransomtrace {

namespace {

int parse_int_field(std::string_view s, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.begin(), s.end(), v);
    if (ec != std::errc{} || p != s.end())
        throw Error(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace

Date Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw Error("date must be YYYY-MM-DD: '" + std::string(iso) + "'");
    int y = parse_int_field(iso.substr(0, 4), "date");
    int m = parse_int_field(iso.substr(5, 2), "date");
    int d = parse_int_field(iso.substr(8, 2), "date");
    return from_ymd(y, m, d);
}

Date Date::from_ymd(int year, int month, int day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                    std::chrono::day{unsigned(day)}};
    if (!ymd.ok())
        throw Error("invalid calendar date " + std::to_string(year) + "-" + std::to_string(month) +
                    "-" + std::to_string(day));
    return Date(year, month, day);
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year_, month_, day_);
    return buf;
}

long Date::day_number() const {
    std::chrono::year_month_day ymd{std::chrono::year{year_}, std::chrono::month{unsigned(month_)},
                                    std::chrono::day{unsigned(day_)}};
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

Date Date::next_day() const {
    std::chrono::sys_days sd{std::chrono::year_month_day{
        std::chrono::year{year_}, std::chrono::month{unsigned(month_)},
        std::chrono::day{unsigned(day_)}}};
    std::chrono::year_month_day n{sd + std::chrono::days{1}};
    return Date(int(n.year()), int(unsigned(n.month())), int(unsigned(n.day())));
}

TimeOfDay TimeOfDay::parse(std::string_view hms) {
    if (hms.size() != 8 || hms[2] != ':' || hms[5] != ':')
        throw Error("time must be HH:MM:SS: '" + std::string(hms) + "'");
    int h = parse_int_field(hms.substr(0, 2), "time");
    int m = parse_int_field(hms.substr(3, 2), "time");
    int s = parse_int_field(hms.substr(6, 2), "time");
    return from_hms(h, m, s);
}

TimeOfDay TimeOfDay::from_hms(int hour, int minute, int second) {
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59)
        throw Error("invalid time of day " + std::to_string(hour) + ":" + std::to_string(minute) +
                    ":" + std::to_string(second));
    return TimeOfDay(hour, minute, second);
}

std::string TimeOfDay::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", hour_, minute_, second_);
    return buf;
}

}  // namespace ransomtrace
