#pragma once

#include <stdexcept>
#include <string>

namespace blinktrack {

/// Malformed or missing user-supplied input (files, CLI values). The CLI maps
/// this to exit code 1; everything else unexpected maps to 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blinktrack
