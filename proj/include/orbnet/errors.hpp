#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbnet {

// Base of every error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (non-unit, non-prime, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A quantity that is not defined for the given input (lambda with nu = 0, ...).
class UndefinedError : public Error {
public:
    using Error::Error;
};

// Floating evaluation would leave the exactly representable range.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A configured work budget (enumeration nodes, matrix size) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Syntax error in textual input. position is a 0-based character offset for
// single-line grammars and a 1-based line number for files.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace orbnet
