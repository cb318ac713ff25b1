#include "ransomtrace/satoshi.hpp"

#include <charconv>
#include <limits>

namespace ransomtrace {

namespace {

std::int64_t pow10(int n) {
    std::int64_t p = 1;
    while (n-- > 0) p *= 10;
    return p;
}

}  // namespace

Satoshi Satoshi::from_value(std::int64_t v) {
    if (v < 0) throw Error("satoshi amount must be non-negative, got " + std::to_string(v));
    return Satoshi(v);
}

Satoshi Satoshi::parse_btc(std::string_view text) {
    auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw Error("empty BTC amount");
    if (frac.size() > 8) throw Error("BTC amount has more than 8 fractional digits: '" +
                                     std::string(text) + "'");

    std::int64_t whole_v = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.begin(), whole.end(), whole_v);
        if (ec != std::errc{} || p != whole.end() || whole_v < 0)
            throw Error("malformed BTC amount: '" + std::string(text) + "'");
    }
    std::int64_t frac_v = 0;
    if (!frac.empty()) {
        auto [p, ec] = std::from_chars(frac.begin(), frac.end(), frac_v);
        if (ec != std::errc{} || p != frac.end() || frac_v < 0)
            throw Error("malformed BTC amount: '" + std::string(text) + "'");
        frac_v *= pow10(8 - static_cast<int>(frac.size()));
    }
    if (whole_v > (std::numeric_limits<std::int64_t>::max() - frac_v) / kSatoshiPerBtc)
        throw Error("BTC amount out of range: '" + std::string(text) + "'");
    return Satoshi(whole_v * kSatoshiPerBtc + frac_v);
}

Satoshi Satoshi::operator+(Satoshi other) const {
    if (value_ > std::numeric_limits<std::int64_t>::max() - other.value_)
        throw Error("satoshi addition overflow");
    return Satoshi(value_ + other.value_);
}

Satoshi Satoshi::operator-(Satoshi other) const {
    if (other.value_ > value_)
        throw Error("satoshi subtraction would be negative: " + std::to_string(value_) + " - " +
                    std::to_string(other.value_));
    return Satoshi(value_ - other.value_);
}

std::string Satoshi::to_btc() const {
    std::string whole = std::to_string(value_ / kSatoshiPerBtc);
    std::string frac = std::to_string(value_ % kSatoshiPerBtc);
    return whole + "." + std::string(8 - frac.size(), '0') + frac;
}

std::string Satoshi::to_btc(int decimals) const {
    if (decimals < 0 || decimals > 8) throw Error("BTC display precision must be 0-8");
    if (decimals == 8) return to_btc();
    // Half-up rounding at the display boundary only; stored values stay exact.
    std::int64_t unit = pow10(8 - decimals);
    std::int64_t rounded = (value_ + unit / 2) / unit;
    if (decimals == 0) return std::to_string(rounded);
    std::int64_t scale = pow10(decimals);
    std::string whole = std::to_string(rounded / scale);
    std::string frac = std::to_string(rounded % scale);
    return whole + "." + std::string(decimals - frac.size(), '0') + frac;
}

}  // namespace ransomtrace
