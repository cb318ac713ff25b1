#pragma once

#include <memory>

#include "ransomtrace/provider.hpp"
#include "ransomtrace/rate_limiter.hpp"

namespace ransomtrace {

/// Client for a blockchain-data HTTP service speaking the wire.hpp
/// JSON shapes:
///
///   GET /address/<addr>/summary
///   GET /address/<addr>/transactions?offset=N&limit=M
///       -> {"address": ..., "total": T, "txs": [...]}
///
/// Requests are paced by a shared rate limiter; connection failures,
/// 5xx and 429 responses are retried with exponential seeded-jitter
/// backoff (max_retries retries after the initial attempt), then
/// surfaced as ProviderUnavailable or RateLimited. Schema drift is
/// MalformedResponse and is not retried.
class HttpProvider : public Provider {
public:
    explicit HttpProvider(ProviderSpec spec, std::shared_ptr<Clock> clock = nullptr);

    void fetch_address_transactions(const AddressId& address, const TxSink& sink) override;
    AddressSummary fetch_address_summary(const AddressId& address) override;

private:
    std::string get_with_retry(const std::string& path);

    ProviderSpec spec_;
    std::shared_ptr<Clock> clock_;
    RateLimiter limiter_;
};

}  // namespace ransomtrace
