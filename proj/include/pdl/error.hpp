#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different coordinate frames.
class FrameMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation was violated.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Groebner computation ran past its reduction-step budget.
class ResourceExhausted : public Error {
public:
    using Error::Error;
};

/// An internal cross-check between two independent computations failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace pdl
