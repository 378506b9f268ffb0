#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmlattice/isogeny.hpp"
#include "rmlattice/modp.hpp"

namespace rmlattice {

enum class SrBranch { split_quotient, split_divide, associate_quotient, associate_divide };

std::string to_string(SrBranch branch);
std::optional<SrBranch> parse_sr_branch(const std::string& name);

struct ReductionResult {
  PolarizedRMSurface surface;
  std::vector<IsogenyStep> steps;
};

/// Removes the part of ker(lambda)[ell^inf] outside ker(lambda)[ell] by scaling
/// (when E = 0 mod ell) and quotienting by ell * Lambda[ell^2]. Afterwards the
/// ell-part of the elementary divisors is (1,1,1,1) or (1,1,ell,ell).
ReductionResult sqf_reduce(const PolarizedRMSurface& s, const Int& ell);

struct MaxStepResult {
  PolarizedRMSurface surface;
  IsogenyStep step;
};

/// Enlarges the stabilizer order at ell | g, g the stabilizer conductor.
/// Quotients by K = (1/ell) L + (1/ell^2) A L with A the generator of Z[w_g],
/// descends ell^3 * E and installs the action rebase(A) / ell of w_{g/ell}.
/// Degree is preserved; raises InvariantError unless t = 2 and |K| = ell^6.
MaxStepResult max_step(const PolarizedRMSurface& s, const Int& ell);

struct SrStepResult {
  PolarizedRMSurface surface;
  std::vector<IsogenyStep> steps;
  std::optional<SrBranch> branch;  // absent when sqf_reduce cleared ell
  std::optional<KernelSubgroup> kernel;  // chosen kernel for quotient branches
};

/// Lowers the degree by at least ell^2 at an odd prime ell = alpha1 * alpha2
/// reducible in the order, ell | degree, ell not dividing the conductor.
/// Raises HypothesisError when ell is not reducible.
SrStepResult sr_step(const PolarizedRMSurface& s, const Int& ell);

/// Basis (reduced echelon, over Z/ell) of Lambda[ell] = ker(E mod ell),
/// identifying x/ell in L* with x mod ell.
std::vector<modp::Row> polarization_torsion(const PolarizedRMSurface& s, const Int& ell);

/// Basis of A[alpha] = ker(A_alpha mod ell).
std::vector<modp::Row> alpha_torsion(const PolarizedRMSurface& s, const OrderElement& alpha,
                                     const Int& ell);

/// Kernel (L + (1/ell) span(rows)) for a subspace of L / ell L.
KernelSubgroup kernel_from_torsion(const std::vector<modp::Row>& rows, const Int& ell);

struct PipelineReport {
  std::uint64_t seed = 0;
  Int input_discriminant;
  Int input_conductor;
  Int input_degree;
  std::vector<IsogenyStep> steps;
  PolarizedRMSurface output;
};

/// 53-bit FNV-1a hash of the instance data.
std::uint64_t fingerprint(const PolarizedRMSurface& s);

/// Principal polarization with maximal real multiplication, reached by
/// max_step over the conductor primes and then sr_step over the degree
/// primes, both in increasing order. Requires odd, coprime degree and
/// conductor (HypothesisError otherwise). Pairing spot checks after each step
/// are driven by `fingerprint(s)`, which is recorded as the report seed.
PipelineReport principalize(const PolarizedRMSurface& s);

/// Applies a recorded step to `s` without consulting the algorithms. Quotients
/// with `t` set are conductor steps. Throws std::invalid_argument (or
/// std::domain_error) when the step cannot be applied.
PolarizedRMSurface apply_step(const PolarizedRMSurface& s, const IsogenyStep& step);

}  // namespace rmlattice
