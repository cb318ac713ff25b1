#include "ransomtrace/ledger_store.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ransomtrace/csv.hpp"
#include "ransomtrace/errors.hpp"

namespace ransomtrace {

namespace {

constexpr const char* kSchemaSql = R"sql(
CREATE TABLE tx (
    hash TEXT NOT NULL PRIMARY KEY,
    gmt_date TEXT NOT NULL,
    gmt_time TEXT NOT NULL,
    is_coinbase INTEGER NOT NULL
);
CREATE TABLE tx_io (
    hash TEXT NOT NULL,
    side INTEGER NOT NULL,
    ord INTEGER NOT NULL,
    address TEXT NOT NULL,
    amount_sat INTEGER NOT NULL,
    PRIMARY KEY (hash, side, ord)
);
CREATE INDEX tx_io_by_address ON tx_io (address, side);
CREATE TABLE payments (
    hash TEXT NOT NULL,
    address TEXT NOT NULL,
    btc_to_addr INTEGER NOT NULL,
    gmt_date TEXT NOT NULL,
    gmt_time TEXT NOT NULL,
    address_as_input INTEGER NOT NULL,
    credited INTEGER NOT NULL,
    PRIMARY KEY (hash, address)
);
CREATE INDEX payments_by_address ON payments (address, gmt_date, gmt_time, hash);
)sql";

std::string join_io(const std::vector<std::pair<AddressId, Satoshi>>& io) {
    std::string out;
    for (const auto& [addr, amount] : io) {
        if (!out.empty()) out += ';';
        out += addr.text() + ':' + std::to_string(amount.value());
    }
    return out;
}

std::vector<std::pair<AddressId, Satoshi>> parse_io(const std::string& text, std::size_t line) {
    std::vector<std::pair<AddressId, Satoshi>> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(';', pos);
        std::string item = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        std::size_t colon = item.rfind(':');
        if (colon == std::string::npos) throw MalformedRow(line, "address list entry missing amount: '" + item + "'");
        try {
            AddressId addr = AddressId::parse(item.substr(0, colon));
            Satoshi amount = Satoshi::from_value(std::stoll(item.substr(colon + 1)));
            out.emplace_back(addr, amount);
        } catch (const Error& e) {
            throw MalformedRow(line, e.what());
        } catch (const std::exception&) {
            throw MalformedRow(line, "bad amount in address list entry: '" + item + "'");
        }
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace

// RAII prepared statement. Finalized on destruction; bind/step helpers
// convert SQLite errors into StorageFailure.
struct LedgerStore::Stmt {
    sqlite3_stmt* stmt = nullptr;

    Stmt(sqlite3* db, const char* sql) {
        if (sqlite3_prepare_v2(db, sql, -1, &stmt, nullptr) != SQLITE_OK)
            throw StorageFailure(std::string("prepare failed: ") + sqlite3_errmsg(db));
    }
    ~Stmt() { sqlite3_finalize(stmt); }
    Stmt(const Stmt&) = delete;

    Stmt& bind(int idx, const std::string& v) {
        sqlite3_bind_text(stmt, idx, v.c_str(), -1, SQLITE_TRANSIENT);
        return *this;
    }
    Stmt& bind(int idx, std::int64_t v) {
        sqlite3_bind_int64(stmt, idx, v);
        return *this;
    }
    bool row() {
        int rc = sqlite3_step(stmt);
        if (rc == SQLITE_ROW) return true;
        if (rc == SQLITE_DONE) return false;
        throw StorageFailure(std::string("step failed: ") +
                             sqlite3_errmsg(sqlite3_db_handle(stmt)));
    }
    void run() {
        while (row()) {
        }
    }
    std::string text(int col) const {
        const unsigned char* t = sqlite3_column_text(stmt, col);
        return t ? reinterpret_cast<const char*>(t) : "";
    }
    std::int64_t integer(int col) const { return sqlite3_column_int64(stmt, col); }
};

LedgerStore::LedgerStore(const std::filesystem::path& location, StoreMode mode) : mode_(mode) {
    int flags = mode == StoreMode::read_only ? SQLITE_OPEN_READONLY
                                             : SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE;
    if (sqlite3_open_v2(location.string().c_str(), &db_, flags, nullptr) != SQLITE_OK) {
        std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
        sqlite3_close(db_);
        db_ = nullptr;
        throw StorageFailure("cannot open store at " + location.string() + ": " + msg);
    }
    exec("PRAGMA foreign_keys = ON");
    int version = 0;
    {
        Stmt s(db_, "PRAGMA user_version");
        if (s.row()) version = static_cast<int>(s.integer(0));
    }
    if (version == 0) {
        if (mode == StoreMode::read_only)
            throw StorageFailure("store at " + location.string() + " is empty or uninitialized");
        exec("BEGIN");
        exec(kSchemaSql);
        exec("PRAGMA user_version = 1");
        exec("COMMIT");
    } else if (version != kSchemaVersion) {
        std::string msg = "store schema version " + std::to_string(version) + " unsupported (want " +
                          std::to_string(kSchemaVersion) + ")";
        sqlite3_close(db_);
        db_ = nullptr;
        throw StorageFailure(msg);
    }
}

LedgerStore::~LedgerStore() {
    if (db_) sqlite3_close(db_);
}

LedgerStore::LedgerStore(LedgerStore&& other) noexcept : db_(other.db_), mode_(other.mode_) {
    other.db_ = nullptr;
}

LedgerStore& LedgerStore::operator=(LedgerStore&& other) noexcept {
    if (this != &other) {
        if (db_) sqlite3_close(db_);
        db_ = other.db_;
        mode_ = other.mode_;
        other.db_ = nullptr;
    }
    return *this;
}

void LedgerStore::exec(const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown SQLite error";
        sqlite3_free(err);
        throw StorageFailure(msg);
    }
}

void LedgerStore::require_writable() const {
    if (mode_ != StoreMode::read_write) throw StorageFailure("store is opened read-only");
}

int LedgerStore::insert_tx(const TxRecord& tx, const std::set<AddressId>& tracked) {
    require_writable();
    tx.validate();
    std::lock_guard lock(write_mutex_);

    exec("BEGIN");
    try {
        bool tx_exists = false;
        {
            Stmt s(db_, "SELECT 1 FROM tx WHERE hash = ?1");
            s.bind(1, tx.hash);
            tx_exists = s.row();
        }
        if (tx_exists) {
            // Hash is the integrity anchor: a differing body is an error.
            TxRecord stored = load_tx(tx.hash);
            if (stored != tx) {
                exec("ROLLBACK");
                throw ConflictingDuplicate("tx " + tx.hash +
                                           " already stored with different content");
            }
        } else {
            Stmt ins(db_, "INSERT INTO tx (hash, gmt_date, gmt_time, is_coinbase) VALUES "
                          "(?1, ?2, ?3, ?4)");
            ins.bind(1, tx.hash)
                .bind(2, tx.gmt_date.to_string())
                .bind(3, tx.gmt_time.to_string())
                .bind(4, std::int64_t{tx.is_coinbase});
            ins.run();
            Stmt io(db_, "INSERT INTO tx_io (hash, side, ord, address, amount_sat) VALUES "
                         "(?1, ?2, ?3, ?4, ?5)");
            auto insert_side = [&](const auto& list, std::int64_t side) {
                std::int64_t ord = 0;
                for (const auto& [addr, amount] : list) {
                    sqlite3_reset(io.stmt);
                    io.bind(1, tx.hash).bind(2, side).bind(3, ord++).bind(4, addr.text())
                        .bind(5, amount.value());
                    io.run();
                }
            };
            insert_side(tx.inputs, 0);
            insert_side(tx.outputs, 1);
        }

        int new_credited = 0;
        Stmt pay(db_, "INSERT OR IGNORE INTO payments (hash, address, btc_to_addr, gmt_date, "
                      "gmt_time, address_as_input, credited) VALUES (?1, ?2, ?3, ?4, ?5, ?6, ?7)");
        for (const AddressId& addr : tracked) {
            bool in = tx.has_input(addr);
            bool out = tx.has_output(addr);
            if (!in && !out) continue;
            sqlite3_reset(pay.stmt);
            pay.bind(1, tx.hash)
                .bind(2, addr.text())
                .bind(3, tx.credited_to(addr).value())
                .bind(4, tx.gmt_date.to_string())
                .bind(5, tx.gmt_time.to_string())
                .bind(6, std::int64_t{in})
                .bind(7, std::int64_t{out});
            pay.run();
            if (out && sqlite3_changes(db_) > 0) ++new_credited;
        }
        exec("COMMIT");
        return new_credited;
    } catch (const ConflictingDuplicate&) {
        throw;
    } catch (...) {
        exec("ROLLBACK");
        throw;
    }
}

TxRecord LedgerStore::load_tx(const std::string& hash) const {
    TxRecord tx;
    tx.hash = hash;
    {
        Stmt s(db_, "SELECT gmt_date, gmt_time, is_coinbase FROM tx WHERE hash = ?1");
        s.bind(1, hash);
        if (!s.row()) throw StorageFailure("tx not found: " + hash);
        tx.gmt_date = Date::parse(s.text(0));
        tx.gmt_time = TimeOfDay::parse(s.text(1));
        tx.is_coinbase = s.integer(2) != 0;
    }
    Stmt io(db_, "SELECT side, address, amount_sat FROM tx_io WHERE hash = ?1 ORDER BY side, ord");
    io.bind(1, hash);
    while (io.row()) {
        auto& list = io.integer(0) == 0 ? tx.inputs : tx.outputs;
        list.emplace_back(AddressId::parse(io.text(1)), Satoshi::from_value(io.integer(2)));
    }
    return tx;
}

std::vector<PaymentEvent> LedgerStore::payments_to(const AddressId& address,
                                                   std::optional<DateRange> window) const {
    std::string sql = "SELECT hash, btc_to_addr, gmt_date, address_as_input FROM payments "
                      "WHERE address = ?1 AND credited = 1";
    if (window) sql += " AND gmt_date >= ?2 AND gmt_date <= ?3";
    sql += " ORDER BY gmt_date, gmt_time, hash";
    Stmt s(db_, sql.c_str());
    s.bind(1, address.text());
    if (window) s.bind(2, window->first.to_string()).bind(3, window->last.to_string());
    std::vector<PaymentEvent> out;
    while (s.row()) {
        out.push_back(PaymentEvent{s.text(0), address, Satoshi::from_value(s.integer(1)),
                                   Date::parse(s.text(2)), s.integer(3) != 0});
    }
    return out;
}

std::vector<TxRecord> LedgerStore::transactions_spending(const AddressId& address) const {
    Stmt s(db_, "SELECT DISTINCT tx.hash FROM tx_io JOIN tx ON tx.hash = tx_io.hash "
                "WHERE tx_io.address = ?1 AND tx_io.side = 0 "
                "ORDER BY tx.gmt_date, tx.gmt_time, tx.hash");
    s.bind(1, address.text());
    std::vector<std::string> hashes;
    while (s.row()) hashes.push_back(s.text(0));
    std::vector<TxRecord> out;
    out.reserve(hashes.size());
    for (const auto& h : hashes) out.push_back(load_tx(h));
    return out;
}

std::optional<TxRecord> LedgerStore::transaction(const std::string& hash) const {
    Stmt s(db_, "SELECT 1 FROM tx WHERE hash = ?1");
    s.bind(1, hash);
    if (!s.row()) return std::nullopt;
    return load_tx(hash);
}

std::vector<AddressId> LedgerStore::tracked_addresses() const {
    Stmt s(db_, "SELECT DISTINCT address FROM payments ORDER BY address");
    std::vector<AddressId> out;
    while (s.row()) out.push_back(AddressId::parse(s.text(0)));
    return out;
}

std::int64_t LedgerStore::tx_count() const {
    Stmt s(db_, "SELECT COUNT(*) FROM tx");
    s.row();
    return s.integer(0);
}

std::size_t LedgerStore::export_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StorageFailure("cannot write CSV to " + path.string());
    out << kCsvHeader << "\n";

    Stmt s(db_, "SELECT hash, btc_to_addr, gmt_date, gmt_time, address, address_as_input "
                "FROM payments ORDER BY gmt_date, gmt_time, hash, address");
    std::size_t rows = 0;
    std::string cached_hash;
    std::string in_addrs, out_addrs;
    while (s.row()) {
        std::string hash = s.text(0);
        if (hash != cached_hash) {
            TxRecord tx = load_tx(hash);
            in_addrs = join_io(tx.inputs);
            out_addrs = join_io(tx.outputs);
            cached_hash = hash;
        }
        out << csv::join_row({hash, std::to_string(s.integer(1)), in_addrs, out_addrs, s.text(2),
                              s.text(3), s.text(4), s.integer(5) ? "1" : "0"})
            << "\n";
        ++rows;
    }
    if (!out.flush()) throw StorageFailure("short write to " + path.string());
    return rows;
}

std::size_t LedgerStore::import_csv(const std::filesystem::path& path) {
    require_writable();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageFailure("cannot read CSV from " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw MalformedRow(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw MalformedRow(1, "unexpected header: '" + line + "'");

    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv::split_row(line);
        if (fields.size() != 8)
            throw MalformedRow(line_no, "expected 8 columns, got " + std::to_string(fields.size()));

        TxRecord tx;
        AddressId address = [&] {
            try {
                return AddressId::parse(fields[6]);
            } catch (const Error& e) {
                throw MalformedRow(line_no, e.what());
            }
        }();
        try {
            tx.hash = fields[0];
            tx.inputs = parse_io(fields[2], line_no);
            tx.outputs = parse_io(fields[3], line_no);
            tx.gmt_date = Date::parse(fields[4]);
            tx.gmt_time = TimeOfDay::parse(fields[5]);
            tx.is_coinbase = tx.inputs.empty();
            tx.validate();
        } catch (const MalformedRow&) {
            throw;
        } catch (const Error& e) {
            throw MalformedRow(line_no, e.what());
        }

        std::int64_t btc_to_addr = 0;
        try {
            btc_to_addr = std::stoll(fields[1]);
        } catch (const std::exception&) {
            throw MalformedRow(line_no, "bad btc_to_addr: '" + fields[1] + "'");
        }
        if (btc_to_addr != tx.credited_to(address).value())
            throw MalformedRow(line_no, "btc_to_addr does not match outputs paying " +
                                            address.text());
        if (fields[7] != "0" && fields[7] != "1")
            throw MalformedRow(line_no, "address_as_input must be 0 or 1");
        if ((fields[7] == "1") != tx.has_input(address))
            throw MalformedRow(line_no, "address_as_input flag does not match inputs");

        insert_tx(tx, {address});
        ++rows;
    }
    return rows;
}

}  // namespace ransomtrace
