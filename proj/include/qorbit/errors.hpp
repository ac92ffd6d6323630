#pragma once

#include <stdexcept>
#include <string>

namespace qorbit {

/// Size/complexity guard tripped (CLI exit code 3).
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A cross-checked internal identity failed (CLI exit code 4). These signal
/// implementation bugs, never bad input.
struct internal_check_error : std::logic_error {
    explicit internal_check_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace qorbit
