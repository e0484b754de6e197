#pragma once

#include <stdexcept>
#include <string>

namespace lacuna {

// Configuration / usage problems: bad keys, bad parameter values.
// The CLI maps these to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// An operand does not fit the precision budget of a fixed-point value.
// Carries the number of bits that would have been required.
struct precision_error : std::runtime_error {
    long required_bits;
    precision_error(const std::string& what, long required)
        : std::runtime_error(what), required_bits(required) {}
};

// A computation would exceed a documented memory/time budget.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A truncated series came out structurally invalid (e.g. negative variance).
struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lacuna
