#pragma once

#include <stdexcept>
#include <string>

namespace repulse {

// Bad arguments or violated call contracts (wrong sizes, out-of-range exponents, ...).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric precondition failed in a recoverable, diagnosable way.  The message
// carries the remedy (minimal admissible N, maximal admissible dt, ...).
class precondition_error : public std::runtime_error {
public:
    precondition_error(const std::string& what, double suggested)
        : std::runtime_error(what), suggested_value(suggested) {}
    explicit precondition_error(const std::string& what)
        : std::runtime_error(what), suggested_value(0.0) {}

    double suggested_value;
};

// Breakdown inside a numeric routine (non-finite values, failed solve).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace repulse
