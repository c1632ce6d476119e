// SPDX-License-Identifier: Apache-2.0

#ifndef BIATSP_ERROR_HPP
#define BIATSP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace biatsp {

/// Invalid generator or engine parameters.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed TSPLIB input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed instance, front or table file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace biatsp

#endif  // BIATSP_ERROR_HPP
