#pragma once

#include <stdexcept>
#include <string>

namespace svgp {

// Invalid user input: bad config values, unknown keys, out-of-range
// parameters. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure that survived the jitter ladder (non-PSD matrix,
// rank-deficient eigenbasis, non-finite intermediate). Messages carry
// condition diagnostics. The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svgp
