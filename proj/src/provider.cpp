#include "ransomtrace/provider.hpp"

#include "ransomtrace/errors.hpp"
#include "ransomtrace/fixture_provider.hpp"
#include "ransomtrace/http_provider.hpp"

namespace ransomtrace {

void ProviderSpec::validate() const {
    if (base_url_or_dir.empty()) throw ConfigError("provider location must not be empty");
    if (kind == Kind::http && rate_limit <= 0)
        throw ConfigError("http provider rate limit must be positive");
    if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
    if (page_size <= 0) throw ConfigError("page_size must be positive");
}

void AddressSummary::validate() const {
    if (first_seen.has_value() != (total_tx_count > 0))
        throw Error("summary for " + address.text() +
                    ": first_seen must be present exactly when total_tx_count > 0");
}

std::vector<TxRecord> Provider::collect_transactions(const AddressId& address) {
    std::vector<TxRecord> out;
    fetch_address_transactions(address, [&](const TxRecord& tx) { out.push_back(tx); });
    return out;
}

std::unique_ptr<Provider> make_provider(const ProviderSpec& spec) {
    spec.validate();
    if (spec.kind == ProviderSpec::Kind::fixture)
        return std::make_unique<FixtureProvider>(spec.base_url_or_dir);
    return std::make_unique<HttpProvider>(spec);
}

}  // namespace ransomtrace
