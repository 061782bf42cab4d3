#pragma once

#include <stdexcept>
#include <string>

namespace aer {

enum class ErrorKind { config, assumption, numerical };

// Base of all library errors. kind() selects the CLI exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class AssumptionViolation : public Error {
public:
    explicit AssumptionViolation(const std::string& what) : Error(ErrorKind::assumption, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

// Process exit status for an error kind: 2 assumption, 3 numerical, 4 config.
int exit_status(ErrorKind kind) noexcept;
const char* to_string(ErrorKind kind) noexcept;

// Rethrows `e` with "stage: " prepended, preserving its kind.
[[noreturn]] void rethrow_with_stage(const Error& e, const std::string& stage);

}  // namespace aer
