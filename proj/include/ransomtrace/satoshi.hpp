#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

/// A non-negative amount of bitcoin counted in satoshis (1e-8 BTC).
/// All amount arithmetic in the toolkit happens on this exact integer
/// type; BTC decimal strings exist only at the display/parse boundary.
class Satoshi {
public:
    constexpr Satoshi() = default;

    static Satoshi from_value(std::int64_t v);

    /// Parses a BTC decimal string ("2", "2.0", "1403.75480000") with at
    /// most 8 fractional digits into satoshis.
    static Satoshi parse_btc(std::string_view text);

    constexpr std::int64_t value() const { return value_; }

    Satoshi operator+(Satoshi other) const;
    /// Throws if the result would be negative.
    Satoshi operator-(Satoshi other) const;
    Satoshi& operator+=(Satoshi other) {
        *this = *this + other;
        return *this;
    }

    /// Decimal BTC string with exactly 8 fractional digits.
    std::string to_btc() const;

    /// Decimal BTC string rounded half-up to `decimals` fractional digits
    /// (the paper's tables print 4).
    std::string to_btc(int decimals) const;

    auto operator<=>(const Satoshi&) const = default;

private:
    constexpr explicit Satoshi(std::int64_t v) : value_(v) {}

    std::int64_t value_ = 0;
};

constexpr std::int64_t kSatoshiPerBtc = 100'000'000;

}  // namespace ransomtrace
