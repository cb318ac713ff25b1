#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "ransomtrace/records.hpp"

struct sqlite3;

namespace ransomtrace {

enum class StoreMode { read_only, read_write };

/// Durable store of transactions and per-address payment rows in one
/// SQLite file. Transactions are keyed by hash, payment rows by
/// (hash, address); inserting the same transaction again is a no-op,
/// inserting a different body under a known hash is an error.
///
/// Concurrency contract: any number of readers; writes are serialized
/// internally. No cross-process locking beyond what SQLite provides.
class LedgerStore {
public:
    LedgerStore(const std::filesystem::path& location, StoreMode mode);
    ~LedgerStore();

    LedgerStore(LedgerStore&&) noexcept;
    LedgerStore& operator=(LedgerStore&&) noexcept;
    LedgerStore(const LedgerStore&) = delete;
    LedgerStore& operator=(const LedgerStore&) = delete;

    /// Stores `tx` once regardless of how many tracked addresses it
    /// touches, plus one payment row per tracked address appearing in
    /// the transaction. Returns the number of new credited payment
    /// rows (tracked addresses appearing in the outputs).
    int insert_tx(const TxRecord& tx, const std::set<AddressId>& tracked);

    /// All credits to `address` within the window, ordered by
    /// (gmt_date, gmt_time, tx_hash).
    std::vector<PaymentEvent> payments_to(const AddressId& address,
                                          std::optional<DateRange> window = std::nullopt) const;

    /// Every stored transaction with `address` among its inputs,
    /// ordered by (gmt_date, gmt_time, hash). Coinbase transactions
    /// have no inputs and are never returned.
    std::vector<TxRecord> transactions_spending(const AddressId& address) const;

    std::optional<TxRecord> transaction(const std::string& hash) const;

    /// Distinct addresses with at least one payment row, sorted.
    std::vector<AddressId> tracked_addresses() const;

    std::int64_t tx_count() const;

    /// Writes the flat 8-column interchange CSV; returns data row count.
    std::size_t export_csv(const std::filesystem::path& path) const;

    /// Imports an interchange CSV; returns data row count. Lossless
    /// against export: an empty store loaded from an export answers
    /// every query identically to the original.
    std::size_t import_csv(const std::filesystem::path& path);

    static constexpr int kSchemaVersion = 1;
    static constexpr const char* kCsvHeader =
        "hash,btc_to_addr,trx_in_addrs,trx_out_addrs,gmt_date,gmt_time,address,address_as_input";

private:
    struct Stmt;

    void exec(const char* sql);
    void require_writable() const;
    TxRecord load_tx(const std::string& hash) const;

    sqlite3* db_ = nullptr;
    StoreMode mode_;
    mutable std::mutex write_mutex_;
};

}  // namespace ransomtrace
