#include "ransomtrace/wire.hpp"

#include <nlohmann/json.hpp>

#include "ransomtrace/errors.hpp"

namespace ransomtrace::wire {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw MalformedResponse(std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_string()) throw MalformedResponse(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::pair<AddressId, Satoshi>> io_from_json(const json& j, const char* key) {
    const json& arr = require(j, key);
    if (!arr.is_array()) throw MalformedResponse(std::string("field '") + key + "' must be an array");
    std::vector<std::pair<AddressId, Satoshi>> out;
    out.reserve(arr.size());
    for (const json& item : arr) {
        std::string addr = require_string(item, "address");
        const json& value = require(item, "value_sat");
        if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
            throw MalformedResponse("value_sat must be a non-negative integer");
        try {
            out.emplace_back(AddressId::parse(addr), Satoshi::from_value(value.get<std::int64_t>()));
        } catch (const Error& e) {
            throw MalformedResponse(e.what());
        }
    }
    return out;
}

}  // namespace

TxRecord tx_from_json(const json& j) {
    TxRecord tx;
    tx.hash = require_string(j, "hash");
    tx.inputs = io_from_json(j, "inputs");
    tx.outputs = io_from_json(j, "outputs");
    try {
        tx.gmt_date = Date::parse(require_string(j, "gmt_date"));
        tx.gmt_time = TimeOfDay::parse(require_string(j, "gmt_time"));
    } catch (const MalformedResponse&) {
        throw;
    } catch (const Error& e) {
        throw MalformedResponse(e.what());
    }
    tx.is_coinbase = tx.inputs.empty();
    if (auto it = j.find("is_coinbase"); it != j.end()) {
        if (!it->is_boolean()) throw MalformedResponse("is_coinbase must be a boolean");
        if (it->get<bool>() != tx.is_coinbase)
            throw MalformedResponse("is_coinbase flag contradicts input list for tx " + tx.hash);
    }
    try {
        tx.validate();
    } catch (const Error& e) {
        throw MalformedResponse(e.what());
    }
    return tx;
}

json tx_to_json(const TxRecord& tx) {
    auto io_json = [](const std::vector<std::pair<AddressId, Satoshi>>& io) {
        json arr = json::array();
        for (const auto& [addr, amount] : io)
            arr.push_back({{"address", addr.text()}, {"value_sat", amount.value()}});
        return arr;
    };
    return json{{"hash", tx.hash},
                {"inputs", io_json(tx.inputs)},
                {"outputs", io_json(tx.outputs)},
                {"gmt_date", tx.gmt_date.to_string()},
                {"gmt_time", tx.gmt_time.to_string()},
                {"is_coinbase", tx.is_coinbase}};
}

AddressSummary summary_from_json(const json& j) {
    const json& count = require(j, "total_tx_count");
    if (!count.is_number_integer() || count.get<std::int64_t>() < 0)
        throw MalformedResponse("total_tx_count must be a non-negative integer");
    const json& fs = require(j, "first_seen");
    try {
        std::optional<AddressSummary::FirstSeen> first_seen;
        if (!fs.is_null()) {
            first_seen = AddressSummary::FirstSeen{Date::parse(require_string(fs, "date")),
                                                   TimeOfDay::parse(require_string(fs, "time")),
                                                   require_string(fs, "tx_hash")};
        }
        AddressSummary s{AddressId::parse(require_string(j, "address")),
                         count.get<std::int64_t>(), first_seen};
        s.validate();
        return s;
    } catch (const MalformedResponse&) {
        throw;
    } catch (const Error& e) {
        throw MalformedResponse(e.what());
    }
}

json summary_to_json(const AddressSummary& s) {
    json fs = nullptr;
    if (s.first_seen) {
        fs = json{{"date", s.first_seen->date.to_string()},
                  {"time", s.first_seen->time.to_string()},
                  {"tx_hash", s.first_seen->tx_hash}};
    }
    return json{{"address", s.address.text()},
                {"total_tx_count", s.total_tx_count},
                {"first_seen", fs}};
}

}  // namespace ransomtrace::wire
