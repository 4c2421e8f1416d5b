#pragma once

#include <stdexcept>
#include <string>

namespace bing {

// bad user input (malformed rationals, points below the base line, ...)
struct InputError : std::runtime_error {
  explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

// a certificate or a stage failed re-verification
struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& m) : std::runtime_error(m) {}
};

// a configured resource cap was exhausted
struct CapError : std::runtime_error {
  explicit CapError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace bing
