#include "rmlattice/isogeny.hpp"

#include <stdexcept>

#include "rmlattice/errors.hpp"

namespace rmlattice {

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::quotient:
      return "quotient";
    case StepKind::divide_by_alpha:
      return "divide_by_alpha";
    case StepKind::scale:
      return "scale";
  }
  return "unknown";
}

std::optional<StepKind> parse_step_kind(const std::string& name) {
  if (name == "quotient") return StepKind::quotient;
  if (name == "divide_by_alpha") return StepKind::divide_by_alpha;
  if (name == "scale") return StepKind::scale;
  return std::nullopt;
}

bool ledger_holds(const IsogenyStep& step) {
  if (step.degree_before < 1 || step.degree_after < 1) return false;
  switch (step.kind) {
    case StepKind::quotient: {
      if (!step.kernel) return false;
      const Int k = step.kernel->order();
      if (step.t) return pow(step.prime, 12) * step.degree_before == k * k * step.degree_after;
      return step.degree_before == k * k * step.degree_after;
    }
    case StepKind::divide_by_alpha: {
      if (!step.alpha) return false;
      return step.degree_before == step.prime * step.prime * step.degree_after;
    }
    case StepKind::scale:
      return step.degree_before == pow(step.prime, 4) * step.degree_after;
  }
  return false;
}

QuotientLattice quotient_lattice(const PolarizedRMSurface& s, const KernelSubgroup& k) {
  if (!is_canonical_overlattice(k))
    throw std::invalid_argument("kernel is not a canonical overlattice of L");
  auto action = induced_endomorphism(k.basis, k.denominator, s.action);
  if (!action) throw std::invalid_argument("order action does not preserve the kernel");
  return {k.basis, k.denominator, *action};
}

namespace {

DescentResult descend_impl(const PolarizedRMSurface& s, const KernelSubgroup& k,
                           const Int& scale) {
  QuotientLattice q = quotient_lattice(s, k);
  Matrix raw = q.basis.transpose() * (scale * s.gram) * q.basis;
  const Int den2 = q.denominator * q.denominator;
  DescentResult out;
  for (std::size_t i = 0; i < raw.rows() && !out.violation; ++i)
    for (std::size_t j = 0; j < raw.cols(); ++j)
      if (raw(i, j) % den2 != 0) {
        out.violation = std::make_pair(i, j);
        break;
      }
  PolarizedRMSurface scaled{s.order, s.action, scale * s.gram};
  const bool by_kernel = descent_kernel_criterion(scaled, k);
  if (by_kernel == bool(out.violation))
    throw InvariantError("descent criteria disagree");
  if (!out.violation)
    out.surface = PolarizedRMSurface{s.order, q.action, *raw.divided_exactly(den2)};
  return out;
}

}  // namespace

DescentResult descend_polarization(const PolarizedRMSurface& s, const KernelSubgroup& k) {
  return descend_impl(s, k, 1);
}

DescentResult descend_scaled_polarization(const PolarizedRMSurface& s, const KernelSubgroup& k,
                                          const Int& scale) {
  if (scale < 1) throw std::invalid_argument("scale must be positive");
  return descend_impl(s, k, scale);
}

bool descent_integrality_criterion(const PolarizedRMSurface& s, const KernelSubgroup& k) {
  Matrix raw = k.basis.transpose() * s.gram * k.basis;
  return raw.divided_exactly(k.denominator * k.denominator).has_value();
}

bool descent_kernel_criterion(const PolarizedRMSurface& s, const KernelSubgroup& k) {
  // K inside ker(lambda): every generator of L' lies in L* = adj(E) Z^4 / det.
  const PolarizationKernel lambda = kernel_of_polarization(s);
  for (std::size_t j = 0; j < k.basis.cols(); ++j) {
    Vector target = k.basis.column(j);
    for (auto& x : target) x *= lambda.subgroup.denominator;
    if (!solve_in_lattice(k.denominator * lambda.subgroup.basis, target))
      return false;
  }
  // e^lambda trivial on K x K.
  for (std::size_t i = 0; i < k.basis.cols(); ++i)
    for (std::size_t j = 0; j < k.basis.cols(); ++j) {
      RationalVector a, b;
      for (std::size_t r = 0; r < k.basis.rows(); ++r) {
        a.push_back(k.entry(r, i));
        b.push_back(k.entry(r, j));
      }
      if (weil_on_kernel(s, a, b) != 0) return false;
    }
  return true;
}

std::optional<PolarizedRMSurface> divide_by_symmetric(const PolarizedRMSurface& s,
                                                      const OrderElement& alpha) {
  const Int n = norm(s.order, alpha);
  if (n == 0) throw std::invalid_argument("divide by zero element");
  if (abs(n) == 1) throw std::invalid_argument("divide by a unit");
  Matrix raw = s.gram * element_action(s, conjugate(s.order, alpha));
  auto gram = raw.divided_exactly(n);
  if (!gram) return std::nullopt;
  return PolarizedRMSurface{s.order, s.action, *gram};
}

std::optional<Matrix> induced_endomorphism(const Matrix& basis, const Int& denominator,
                                           const Matrix& m) {
  if (denominator < 1) throw std::invalid_argument("rebasing denominator must be positive");
  if (determinant(basis) == 0) throw std::invalid_argument("rebasing is singular");
  return conjugate_integral(basis, m);
}

}  // namespace rmlattice
