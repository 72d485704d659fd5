#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace roadsv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Data shape problems: gaps, duplicates, incomplete calendar years.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Mathematically undefined input (zero exposure, log of zero, zero variance).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bad arguments or configuration values.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// xi^2 >= 2 kappa theta after overrides.
class FellerViolation : public Error {
public:
    using Error::Error;
};

/// Optimizer stopped without meeting its tolerance. Carries the best iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best, double best_value)
        : Error(what), best_(std::move(best)), best_value_(best_value) {}
    const std::vector<double>& best_iterate() const noexcept { return best_; }
    double best_value() const noexcept { return best_value_; }

private:
    std::vector<double> best_;
    double best_value_;
};

/// Fitted coefficients violate stationarity or invertibility.
class ConstraintError : public Error {
public:
    using Error::Error;
};

} // namespace roadsv
