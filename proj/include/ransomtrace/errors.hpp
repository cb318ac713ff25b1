#pragma once

#include <stdexcept>
#include <string>

namespace ransomtrace {

// Root of the toolkit's error hierarchy. Every failure the library can
// signal derives from this so callers can catch at whatever granularity
// they need.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- core model ---

class MalformedAddress : public Error {
public:
    using Error::Error;
};

// --- ledger store ---

class StorageFailure : public Error {
public:
    using Error::Error;
};

// Same transaction hash inserted with a different body. The hash is the
// integrity anchor; this is never silently overwritten.
class ConflictingDuplicate : public Error {
public:
    using Error::Error;
};

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// --- price series ---

class OrderingViolation : public Error {
public:
    using Error::Error;
};

class DuplicateDate : public Error {
public:
    using Error::Error;
};

// --- providers ---

class ProviderUnavailable : public Error {
public:
    using Error::Error;
};

class MalformedResponse : public Error {
public:
    using Error::Error;
};

class RateLimited : public Error {
public:
    using Error::Error;
};

// --- clustering ---

class CoinbaseInput : public Error {
public:
    using Error::Error;
};

// --- classification ---

class CoinbaseFeeUndefined : public Error {
public:
    using Error::Error;
};

class NegativeFee : public Error {
public:
    using Error::Error;
};

class MissingPrice : public Error {
public:
    using Error::Error;
};

// --- reporting ---

class EmptyInput : public Error {
public:
    using Error::Error;
};

// --- cli / config ---

class ConfigError : public Error {
public:
    using Error::Error;
};

class StageDependencyMissing : public Error {
public:
    using Error::Error;
};

}  // namespace ransomtrace
