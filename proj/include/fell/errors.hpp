#pragma once

#include <stdexcept>
#include <string>

namespace fell {

// Bad user input: mismatched shapes, invalid tables, malformed config.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds the desk-scale capacity guards (enumeration caps,
// matrix dimension caps, lazy-group operations that need enumeration).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fell
