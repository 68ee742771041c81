#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setcalc {

// Root of every error the library throws on bad input or exceeded limits.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected)
        : Error("syntax error at column " + std::to_string(position + 1) + ": expected " + expected),
          position_(position), expected_(std::move(expected)) {}

    // 0-based byte offset into the input.
    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class ArityError : public Error {
public:
    explicit ArityError(const std::string& what) : Error("arity error: " + what) {}
};

// A well-formed parse that violates a statement-level rule (duplicate unknowns etc).
class StatementError : public Error {
public:
    explicit StatementError(const std::string& what) : Error(what) {}
};

class LimitError : public Error {
public:
    explicit LimitError(const std::string& what) : Error("limit exceeded: " + what) {}
};

class OverflowError : public Error {
public:
    OverflowError() : Error("coefficient overflow (signed 64-bit)") {}
};

class MissingVarError : public Error {
public:
    explicit MissingVarError(const std::string& var) : Error("pattern does not assign " + var) {}
};

class IncompleteTableError : public Error {
public:
    explicit IncompleteTableError(const std::string& what) : Error("incomplete value table: " + what) {}
};

class NotACounterexampleError : public Error {
public:
    NotACounterexampleError() : Error("pattern does not refute the statement") {}
};

class UnboundAtomError : public Error {
public:
    explicit UnboundAtomError(const std::string& name) : Error("unbound atom: " + name) {}
};

class UniverseMismatchError : public Error {
public:
    UniverseMismatchError() : Error("sets belong to different universes") {}
};

class CodomainUnspecifiedError : public Error {
public:
    CodomainUnspecifiedError() : Error("surjectivity scan requires a declared codomain") {}
};

} // namespace setcalc
