#pragma once

#include <stdexcept>
#include <string>

namespace sl2forms {

/// Precondition violated by an argument (e.g. odd n where even is required).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Division by zero and similar failures inside field arithmetic.
struct arithmetic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (form syntax, field syntax, config files).
struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace sl2forms
