#pragma once

#include <stdexcept>
#include <string>

namespace solrig {

/// Operands live on different coordinate layouts, or a point has the wrong length.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is not (bi)homogeneous where a fixed degree is required.
class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input: manifold specs, polynomials, coefficient lists.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The manifold is outside what the library can construct or decide.
class UnsupportedManifold : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact identity check failed. The message carries the offending
/// polynomial in canonical serialization.
class IdentityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace solrig
