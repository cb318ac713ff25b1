#include "ransomtrace/price_series.hpp"

#include <fstream>

#include "ransomtrace/csv.hpp"
#include "ransomtrace/errors.hpp"

namespace ransomtrace {

namespace {

UsdAmount parse_quote(const std::string& text, std::size_t line) {
    auto dot = text.find('.');
    if (dot != std::string::npos && text.size() - dot - 1 > kMaxPriceDecimals)
        throw MalformedRow(line, "price quote has more than " +
                                     std::to_string(kMaxPriceDecimals) +
                                     " fractional digits: '" + text + "'");
    try {
        return UsdAmount::parse(text);
    } catch (const Error& e) {
        throw MalformedRow(line, e.what());
    }
}

}  // namespace

PriceSeries load_price_series(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read price CSV at " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,low,avg,high")
        throw MalformedRow(1, "expected header 'date,low,avg,high', got '" + line + "'");

    PriceSeries series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv::split_row(line);
        if (fields.size() != 4)
            throw MalformedRow(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
        Date date = [&] {
            try {
                return Date::parse(fields[0]);
            } catch (const Error& e) {
                throw MalformedRow(line_no, e.what());
            }
        }();
        DailyPrice price{date, parse_quote(fields[1], line_no), parse_quote(fields[2], line_no),
                         parse_quote(fields[3], line_no)};
        price.validate();
        if (!series.emplace(date, price).second)
            throw DuplicateDate("duplicate price row for " + date.to_string());
    }
    return series;
}

std::optional<DailyPrice> price_on(const PriceSeries& series, Date d) {
    auto it = series.find(d);
    if (it == series.end()) return std::nullopt;
    return it->second;
}

}  // namespace ransomtrace
