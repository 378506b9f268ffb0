#pragma once

#include <random>

#include <doctest.h>

#include "rmlattice/algorithms.hpp"
#include "rmlattice/generator.hpp"
#include "rmlattice/oracle.hpp"

namespace rmlattice::testing {

// Principal surface in Q(sqrt D) of conductor f.
inline PolarizedRMSurface standard(long D, long f = 1) { return standard_instance(make_order(D, f)); }

// Block-diagonal alternating form diag(a J, b J).
inline Matrix block_gram(const Int& a, const Int& b) {
  return Matrix{{0, a, 0, 0}, {-a, 0, 0, 0}, {0, 0, 0, b}, {0, 0, -b, 0}};
}

inline Int random_int(std::mt19937_64& rng, long lo, long hi) {
  return Int(lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace rmlattice::testing
