#pragma once

#include <stdexcept>
#include <string>

namespace rmc {

// Base class for all library errors. The CLI maps subclasses to exit codes:
// invariant/contract violations -> 1, configuration/domain/size/io -> 2,
// budget -> 3.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad sizes (zero-length requests, allocation limits).
class size_error : public error {
public:
    explicit size_error(const std::string& msg) : error(msg) {}
};

// Arguments outside the mathematical domain of an operation.
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Invalid or inconsistent configuration.
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// A requested scale exceeds the configured compute/memory budget.
class budget_error : public error {
public:
    explicit budget_error(const std::string& msg) : error(msg) {}
};

// A declared contract (bound process, non-negativity, ...) failed at runtime.
class contract_error : public error {
public:
    explicit contract_error(const std::string& msg) : error(msg) {}
};

// File I/O failure, annotated with the offending path.
class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

}  // namespace rmc
