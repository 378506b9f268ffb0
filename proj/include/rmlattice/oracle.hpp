#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmlattice/algorithms.hpp"

namespace rmlattice {

/// Every subgroup K of A[ell], ell <= 7, that is action-stable, inside
/// ker(lambda) and isotropic, found by running over all reduced echelon bases
/// of subspaces of (Z/ell)^4. Sorted by (denominator, basis entries).
std::vector<KernelSubgroup> enumerate_valid_kernels(const PolarizedRMSurface& s, const Int& ell);

/// Number of k-dimensional subspaces of (Z/q)^n.
Int gaussian_binomial(unsigned n, unsigned k, const Int& q);

/// Samples random nondegenerate alternating B on (Z/ell)^4 and random nonzero
/// eps with B eps = eps^T B, checking that rank(eps) is even and
/// B(eps v, v) = 0 for random v.
bool check_symmetric_rank_even(const Int& ell, int trials, std::uint64_t seed);

struct VerificationResult {
  bool ok = true;
  std::string diagnostic;  // first divergence, e.g. "steps[3].branch"

  explicit operator bool() const { return ok; }
};

/// Replays the report step by step from `input` and compares it, field by
/// field, with a fresh principalize run.
VerificationResult verify_certificate(const PolarizedRMSurface& input,
                                      const PipelineReport& report);

}  // namespace rmlattice
