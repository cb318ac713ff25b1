#include "ransomtrace/address.hpp"

namespace ransomtrace {

AddressId AddressId::parse(std::string_view text) {
    if (text.size() < 26 || text.size() > 35) {
        throw MalformedAddress("address must be 26-35 characters, got " +
                               std::to_string(text.size()) + ": '" + std::string(text) + "'");
    }
    if (text.front() != '1' && text.front() != '3') {
        throw MalformedAddress("address must start with '1' or '3': '" + std::string(text) +
                               "'");
    }
    return AddressId(std::string(text));
}

}  // namespace ransomtrace
