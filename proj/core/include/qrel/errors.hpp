#pragma once

#include <stdexcept>
#include <string>

namespace qrel {

/// Base class of all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value of one quantale was fed to an operation of another.
struct QuantaleMismatch : Error {
  QuantaleMismatch() : Error("quantale mismatch") {}
  explicit QuantaleMismatch(const std::string& what) : Error(what) {}
};

/// Matrix/set endpoints do not line up.
struct ShapeError : Error {
  using Error::Error;
};

/// A numeric argument is outside its admissible range.
struct RangeError : Error {
  using Error::Error;
};

/// A powerset-based operation was asked to run above the configured cap.
struct SizeCapError : Error {
  using Error::Error;
};

/// Operation is deliberately unsupported for the given arguments.
struct NotImplementedError : Error {
  using Error::Error;
};

/// Internal consistency check failed.  Raised by cross-checks that the
/// library runs on its own results; seeing one is always a bug.
struct InternalCheckError : Error {
  using Error::Error;
};

}  // namespace qrel
