#pragma once

#include <stdexcept>
#include <string>

namespace rmlattice {

/// Input violates a mathematical hypothesis of the requested construction
/// (even degree, common factor with the conductor, irreducible prime, ...).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed; results computed so far must not be trusted.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed instance or certificate data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmlattice
