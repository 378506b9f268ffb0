#pragma once

#include <cstdint>
#include <vector>

#include "rmlattice/surface.hpp"

namespace rmlattice {

/// Random instance over Z[w_f] in Q(sqrt D) whose Pfaffian is the product of
/// `degree_primes` (with multiplicity). Starts from standard_instance and,
/// per prime, twists by a norm +-ell element of the order (times a random unit
/// and sign), pulls back along an eigen-hyperplane, or twists by ell itself
/// for a repeated prime; finishes with a random unimodular change of basis.
/// Throws HypothesisError for an even conductor or a prime that is even,
/// divides f, or is not reducible in the maximal order.
PolarizedRMSurface generate_instance(const Int& D, const Int& conductor,
                                     const std::vector<Int>& degree_primes, std::uint64_t seed);

/// Unimodular matrix built from `moves` random elementary column operations.
Matrix random_unimodular(std::uint64_t seed, int moves);

}  // namespace rmlattice
