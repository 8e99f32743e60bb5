#pragma once

#include <stdexcept>
#include <string>

namespace ctt {

// Base for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed mathematical objects: non-bijective image vectors, degree
// mismatches, actions escaping their item set, and similar.
class structural_error : public error {
public:
    using error::error;
};

// An operation was invoked outside its stated domain (non-normal subgroup
// passed to quotient, galois exponent not coprime, bad mutation target, ...).
class precondition_error : public error {
public:
    using error::error;
};

// Input exceeds a documented size bound.
class capacity_error : public error {
public:
    using error::error;
};

// An internal certificate failed; the result would be unreliable.
class computation_error : public error {
public:
    using error::error;
};

// A character table disagrees with itself (e.g. the two centre criteria).
class inconsistency_error : public error {
public:
    using error::error;
};

// Text input rejected; carries a location.
class parse_error : public error {
public:
    parse_error(int line, int column, const std::string& msg)
        : error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace ctt
