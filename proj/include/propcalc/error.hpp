#pragma once

#include <stdexcept>
#include <string>

namespace propcalc {

/// Base exception for every contract violation raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration-based oracle would exceed its size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace propcalc
