#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rmlattice/surface.hpp"

namespace rmlattice {

enum class StepKind { quotient, divide_by_alpha, scale };

std::string to_string(StepKind kind);
std::optional<StepKind> parse_step_kind(const std::string& name);

/// One isogeny in a chain. For a quotient the new basis is
/// kernel->basis / kernel->denominator in old coordinates; divide and scale
/// keep the lattice. A division records prime = |norm(alpha)|.
/// Conductor-reducing quotients carry `t` and descend the scaled form
/// prime^3 * E, so their ledger reads
/// prime^12 * degree_before = |K|^2 * degree_after.
struct IsogenyStep {
  StepKind kind = StepKind::quotient;
  Int prime = 1;
  std::optional<KernelSubgroup> kernel;
  std::optional<OrderElement> alpha;
  Int degree_before = 1;
  Int degree_after = 1;
  std::optional<int> t;
  std::optional<std::string> branch;

  bool operator==(const IsogenyStep&) const = default;
};

/// Whether the step's exact multiplicative degree identity holds.
bool ledger_holds(const IsogenyStep& step);

struct QuotientLattice {
  Matrix basis;      // integer HNF basis of denominator * L'
  Int denominator;   // L' = basis * Z^4 / denominator
  Matrix action;     // induced action in the new basis
};

/// Overlattice L' = L + K with the induced action. Throws std::invalid_argument
/// if the action does not preserve L'.
QuotientLattice quotient_lattice(const PolarizedRMSurface& s, const KernelSubgroup& k);

struct DescentResult {
  std::optional<PolarizedRMSurface> surface;
  /// First pair (i, j) of new basis vectors whose pairing is not integral.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Descends E to L' = L + K. Succeeds iff E(L', L') is integral; the result is
/// cross-checked against "K inside ker(lambda) and e^lambda trivial on K x K"
/// and an InvariantError is raised if the two criteria disagree.
DescentResult descend_polarization(const PolarizedRMSurface& s, const KernelSubgroup& k);

/// Same as descend_polarization for the form scale * E.
DescentResult descend_scaled_polarization(const PolarizedRMSurface& s, const KernelSubgroup& k,
                                          const Int& scale);

/// The two descent criteria evaluated separately, for testing.
bool descent_integrality_criterion(const PolarizedRMSurface& s, const KernelSubgroup& k);
bool descent_kernel_criterion(const PolarizedRMSurface& s, const KernelSubgroup& k);

/// E' = E * A_alpha^{-1} = E * A_conj(alpha) / norm(alpha) when integral.
/// Throws std::invalid_argument for a unit or zero alpha.
std::optional<PolarizedRMSurface> divide_by_symmetric(const PolarizedRMSurface& s,
                                                      const OrderElement& alpha);

/// R^{-1} M R for the rebasing R = basis / denominator, if integral.
std::optional<Matrix> induced_endomorphism(const Matrix& basis, const Int& denominator,
                                           const Matrix& m);

}  // namespace rmlattice
