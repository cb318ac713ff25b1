#include "ransomtrace/usd.hpp"

#include <charconv>

namespace ransomtrace {

namespace {

__int128 pow10_128(int n) {
    __int128 p = 1;
    while (n-- > 0) p *= 10;
    return p;
}

std::string int128_to_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string out;
    while (u > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + out : out;
}

}  // namespace

UsdAmount UsdAmount::parse(std::string_view text) {
    auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw Error("empty USD amount");
    if (frac.size() > 12)
        throw Error("USD amount has more than 12 fractional digits: '" + std::string(text) + "'");

    std::int64_t whole_v = 0;
    if (!whole.empty()) {
        auto [p, ec] = std::from_chars(whole.begin(), whole.end(), whole_v);
        if (ec != std::errc{} || p != whole.end() || whole_v < 0)
            throw Error("malformed USD amount: '" + std::string(text) + "'");
    }
    std::int64_t frac_v = 0;
    if (!frac.empty()) {
        auto [p, ec] = std::from_chars(frac.begin(), frac.end(), frac_v);
        if (ec != std::errc{} || p != frac.end() || frac_v < 0)
            throw Error("malformed USD amount: '" + std::string(text) + "'");
    }
    __int128 pico = static_cast<__int128>(whole_v) * kPicoPerUsd +
                    static_cast<__int128>(frac_v) * pow10_128(12 - static_cast<int>(frac.size()));
    return UsdAmount(pico);
}

UsdAmount UsdAmount::from_pico(__int128 pico) {
    if (pico < 0) throw Error("USD amount must be non-negative");
    return UsdAmount(pico);
}

std::string UsdAmount::display() const { return to_string(2); }

std::string UsdAmount::to_string(int decimals) const {
    if (decimals < 0 || decimals > 12) throw Error("USD display precision must be 0-12");
    __int128 v = pico_;
    if (decimals < 12) {
        __int128 unit = pow10_128(12 - decimals);
        v = (v + unit / 2) / unit;  // half-up; amounts are non-negative
    }
    if (decimals == 0) return int128_to_string(v);
    __int128 scale = pow10_128(decimals);
    std::string whole = int128_to_string(v / scale);
    std::string frac = int128_to_string(v % scale);
    return whole + "." + std::string(decimals - frac.size(), '0') + frac;
}

}  // namespace ransomtrace
