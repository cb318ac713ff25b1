#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "ransomtrace/errors.hpp"
#include "ransomtrace/satoshi.hpp"

namespace ransomtrace {

/// An exact non-negative US dollar amount held as an integer count of
/// 1e-12 USD. Twelve fractional digits make satoshi-count x price
/// products exact as long as prices carry at most four fractional
/// digits, which the price loader enforces. Display rounds half-up to
/// two digits; internal arithmetic never rounds.
class UsdAmount {
public:
    constexpr UsdAmount() = default;

    /// Parses a decimal string with at most 12 fractional digits.
    static UsdAmount parse(std::string_view text);

    static UsdAmount from_pico(__int128 pico);

    constexpr __int128 pico() const { return pico_; }

    UsdAmount operator+(UsdAmount other) const { return UsdAmount(pico_ + other.pico_); }
    UsdAmount& operator+=(UsdAmount other) {
        pico_ += other.pico_;
        return *this;
    }

    /// "1234.57" style string, half-up to two fractional digits.
    std::string display() const;

    /// Exact decimal string with `decimals` fractional digits (half-up
    /// when truncating below 12).
    std::string to_string(int decimals) const;

    auto operator<=>(const UsdAmount&) const = default;

private:
    constexpr explicit UsdAmount(__int128 pico) : pico_(pico) {}

    __int128 pico_ = 0;
};

constexpr std::int64_t kPicoPerUsd = 1'000'000'000'000;

/// Maximum fractional digits accepted on a BTC-USD quote. Keeps
/// satoshi x price exact at the 1e-12 scale.
constexpr int kMaxPriceDecimals = 4;

enum class Quote { low, avg, high };

}  // namespace ransomtrace
