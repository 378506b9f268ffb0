#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rmlattice/matrix.hpp"
#include "rmlattice/quadratic_order.hpp"

namespace rmlattice {

/// A polarized abelian surface with real multiplication, as lattice data:
/// L = Z^4 with `action` the matrix of w_f and `gram` the alternating form E,
/// E(x, y) = x^T E y. The polarization degree is [L* : L] = Pf(E)^2.
struct PolarizedRMSurface {
  RealQuadraticOrder order;
  Matrix action;
  Matrix gram;

  bool operator==(const PolarizedRMSurface&) const = default;
};

struct Validation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

/// Checks antisymmetry, nondegeneracy, the minimal polynomial of the action
/// and A^T E = E A, reporting the first failure.
Validation validate(const PolarizedRMSurface& s);

Int pfaffian(const PolarizedRMSurface& s);

/// Pf(E)^2; throws std::domain_error for a degenerate form.
Int degree(const PolarizedRMSurface& s);

/// x*I + y*A.
Matrix element_action(const PolarizedRMSurface& s, const OrderElement& a);

/// A finite subgroup K of L (x) Q / L, stored as its overlattice
/// L' = (1/denominator) * basis * Z^4 with L <= L'. The basis is the canonical
/// column Hermite form and gcd(content(basis), denominator) = 1.
struct KernelSubgroup {
  Matrix basis;
  Int denominator = 1;

  /// Overlattice generated by L and (1/denominator) * columns of `gens`.
  static KernelSubgroup from_generators(const Matrix& gens, const Int& denominator);
  static KernelSubgroup trivial();

  /// Group order [L' : L].
  Int order() const;
  /// Smallest m with m L' <= L.
  Int exponent() const;
  Rational entry(std::size_t i, std::size_t j) const;

  bool operator==(const KernelSubgroup&) const = default;
};

/// Whether `k` is in canonical form and contains L.
bool is_canonical_overlattice(const KernelSubgroup& k);

struct PolarizationKernel {
  KernelSubgroup subgroup;
  std::array<Int, 4> divisors;  // (d1, d1, d2, d2), d1 | d2
};

/// Lambda = L*/L where L* = E^{-1} Z^4 (computed from adj(E)).
PolarizationKernel kernel_of_polarization(const PolarizedRMSurface& s);

/// d2 / d1 for a form of type (d1, d2), i.e. |Pf(E / d1)|.
Int primitive_pfaffian(const PolarizedRMSurface& s);

/// Generators v_i / d_i of L*/L with the elementary divisors d_i, from the
/// Smith form of E. Entry i of `lifts` is the integer column v_i.
struct KernelGenerators {
  std::vector<Vector> lifts;
  std::array<Int, 4> divisors;
};
KernelGenerators kernel_generators(const PolarizedRMSurface& s);

/// E mod m, the pairing on A[m] = L/mL valued in Z/m.
Matrix torsion_pairing(const PolarizedRMSurface& s, const Int& m);

using RationalVector = std::vector<Rational>;

/// e(a, a') = E(a, a') mod Z for lifts a, a' in L*; value in [0, 1).
/// Throws std::invalid_argument when a lift is not in L*.
Rational weil_on_kernel(const PolarizedRMSurface& s, const RationalVector& a,
                        const RationalVector& a_prime);

/// Independent generators of ker(M) acting on (Z/m)^4. For prime m the
/// generators form the reduced echelon basis of the kernel.
std::vector<Vector> torsion_kernel_of(const Matrix& m, const Int& modulus);

/// Largest order Z[w_g], g | f, whose generator A / (f/g) is integral.
RealQuadraticOrder stabilizer_order(const PolarizedRMSurface& s);

/// Same lattice and form, action re-expressed for the stabilizer order.
PolarizedRMSurface reseat_to_stabilizer(const PolarizedRMSurface& s);

/// L = R + R^dual with E((a,b),(a',b')) = Tr(a b' - a' b), in the basis
/// (1, e1*, w, e2*) where (e1*, e2*) is trace-dual to (1, w). Principal.
PolarizedRMSurface standard_instance(const RealQuadraticOrder& order);

/// Gram becomes E * A_alpha; degree is multiplied by norm(alpha)^2.
PolarizedRMSurface twist_by_alpha(const PolarizedRMSurface& s, const OrderElement& alpha);

/// Restriction to the index-ell sublattice {x : phi(x) = 0 mod ell}, where phi
/// is a left eigenvector of A mod ell for its eigenvalue number
/// `eigenvalue_index` (roots sorted ascending). Degree grows by ell^2.
PolarizedRMSurface eigen_sublattice_pullback(const PolarizedRMSurface& s, const Int& ell,
                                             int eigenvalue_index);

/// (A, E) -> (U^{-1} A U, U^T E U) for unimodular U.
PolarizedRMSurface change_basis(const PolarizedRMSurface& s, const Matrix& u);

/// Swaps basis vectors 0 and 1 if Pf(E) < 0.
PolarizedRMSurface canonicalize_pfaffian_sign(const PolarizedRMSurface& s);

}  // namespace rmlattice
