#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ransomtrace/records.hpp"

namespace ransomtrace {

/// Where transaction histories and address summaries come from: a live
/// blockchain-data HTTP service or a local snapshot directory.
struct ProviderSpec {
    enum class Kind { http, fixture };

    Kind kind = Kind::fixture;
    std::string base_url_or_dir;
    double rate_limit = 4.0;  // requests/second, http only
    int max_retries = 3;      // retries after the initial attempt
    int page_size = 50;
    std::uint64_t backoff_seed = 0;

    void validate() const;
};

/// A provider's global view of one address, independent of whatever is
/// in the local store. `first_seen` is absent exactly when the address
/// has never appeared on chain.
struct AddressSummary {
    struct FirstSeen {
        Date date;
        TimeOfDay time;
        std::string tx_hash;

        Moment moment() const { return Moment{date, time, tx_hash}; }
    };

    AddressId address;
    std::int64_t total_tx_count = 0;
    std::optional<FirstSeen> first_seen;

    void validate() const;
};

using TxSink = std::function<void(const TxRecord&)>;

class Provider {
public:
    virtual ~Provider() = default;

    /// Streams every transaction involving `address` into `sink`,
    /// de-duplicated by hash within the stream. Unknown addresses
    /// yield an empty stream.
    virtual void fetch_address_transactions(const AddressId& address, const TxSink& sink) = 0;

    virtual AddressSummary fetch_address_summary(const AddressId& address) = 0;

    std::vector<TxRecord> collect_transactions(const AddressId& address);
};

std::unique_ptr<Provider> make_provider(const ProviderSpec& spec);

}  // namespace ransomtrace
