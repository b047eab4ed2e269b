#pragma once

#include <stdexcept>
#include <string>

namespace avoidkit {

// Error taxonomy mirrors the CLI exit codes: input_error -> 2,
// cap_exceeded -> 3, verification_error and internal_error -> 1.

struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace avoidkit
