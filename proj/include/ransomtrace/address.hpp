#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

#include "ransomtrace/errors.hpp"

namespace ransomtrace {

/// A Bitcoin payment address: 26-35 character base58 string starting
/// with '1' (P2PKH) or '3' (P2SH). Addresses are treated as opaque
/// identifiers; no checksum validation is performed. Comparison and
/// hashing are by exact string equality.
class AddressId {
public:
    static AddressId parse(std::string_view text);

    const std::string& text() const { return text_; }

    auto operator<=>(const AddressId&) const = default;

private:
    explicit AddressId(std::string text) : text_(std::move(text)) {}

    std::string text_;
};

inline AddressId parse_address(std::string_view text) { return AddressId::parse(text); }

}  // namespace ransomtrace

template <>
struct std::hash<ransomtrace::AddressId> {
    std::size_t operator()(const ransomtrace::AddressId& a) const noexcept {
        return std::hash<std::string>{}(a.text());
    }
};
