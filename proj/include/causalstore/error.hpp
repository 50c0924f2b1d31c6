#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causalstore {

// Base of every error raised by the library. Callers that only need a message
// catch this; the subclasses exist so the CLI and tests can tell failure
// classes apart.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text that does not conform to one of the accepted grammars (N-Triples,
// Turtle subset, query subset, interchange documents).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A value or operation that breaks a data-model invariant (bad term shape,
// out-of-range confidence, domain/range violation, name collision, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A named entity the operation requires does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// Store file problems: lock contention, unreadable or corrupt files,
// failed writes, writes attempted through a shared handle.
class StorageError : public Error {
public:
    using Error::Error;
};

class LockError : public StorageError {
public:
    using StorageError::StorageError;
};

}  // namespace causalstore
