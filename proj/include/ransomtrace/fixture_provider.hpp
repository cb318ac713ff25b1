#pragma once

#include <filesystem>
#include <map>

#include "ransomtrace/provider.hpp"

namespace ransomtrace {

/// Deterministic provider reading a local snapshot directory: one
/// "<address>.json" transaction file per address plus "summaries.json"
/// (schema in wire.hpp). Summaries are cross-checked against the
/// transaction files they describe; disagreement is MalformedResponse.
class FixtureProvider : public Provider {
public:
    explicit FixtureProvider(std::filesystem::path dir);

    void fetch_address_transactions(const AddressId& address, const TxSink& sink) override;
    AddressSummary fetch_address_summary(const AddressId& address) override;

private:
    std::vector<TxRecord> load_tx_file(const AddressId& address) const;

    std::filesystem::path dir_;
};

/// Writes a fixture snapshot for `txs` into `dir`, deriving the
/// per-address files and the summaries file from the transaction set.
void write_fixture(const std::filesystem::path& dir, const std::vector<TxRecord>& txs);

}  // namespace ransomtrace
