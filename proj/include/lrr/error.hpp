#pragma once

#include <stdexcept>
#include <string>

namespace lrr {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad k, s, alpha, dimensions...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The input data cannot be used: non-finite values, degenerate kernel
/// diagonals, malformed CSV.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed or produced an inconsistent result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrr
