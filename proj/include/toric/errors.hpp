#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Malformed user input: unparsable rationals, bad polytope files, builtin
/// parameters outside their documented range.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// The facet data does not describe a bounded full-dimensional polytope.
/// The message carries the certificate (e.g. the unbounded direction).
class GeometryError : public std::runtime_error {
 public:
  enum class Kind { unbounded, empty, not_full_dimensional };

  GeometryError(Kind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}

  Kind kind;
};

/// Numerical failure in a kernel (non-positive-definite pencil, quadrature
/// breakdown). Message names the offending pivot or quantity.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace toric
