#pragma once

#include <stdexcept>
#include <string>

namespace hdc {

// Caller supplied an invalid argument or configuration.
struct parameter_error : std::invalid_argument {
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input is numerically degenerate (no usable direction, empty arc, ...).
struct degenerate_input : std::domain_error {
  explicit degenerate_input(const std::string& what) : std::domain_error(what) {}
};

}  // namespace hdc
