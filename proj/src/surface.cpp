#include "rmlattice/surface.hpp"

#include <algorithm>
#include <stdexcept>

#include "rmlattice/modp.hpp"

namespace rmlattice {

namespace {

constexpr std::size_t kRank = 4;

Matrix minimal_polynomial_at(const RealQuadraticOrder& o, const Matrix& a) {
  return a * a - o.trace * a + o.norm * Matrix::identity(kRank);
}

Int small_prime_or_throw(const Int& ell) {
  if (ell == 2 || !is_prime(ell))
    throw std::invalid_argument("expected an odd prime, got " + to_string(ell));
  return ell;
}

}  // namespace

Validation validate(const PolarizedRMSurface& s) {
  const Matrix& a = s.action;
  const Matrix& e = s.gram;
  if (a.rows() != kRank || a.cols() != kRank || e.rows() != kRank || e.cols() != kRank)
    return {false, "shape: action and gram must be 4x4"};
  if (e.transpose() != -e) return {false, "gram is not antisymmetric"};
  const Int det = determinant(e);
  if (det == 0) return {false, "gram is degenerate"};
  const Int pf = pfaffian4(e);
  if (pf * pf != det) return {false, "det(gram) differs from Pf^2"};
  if (!minimal_polynomial_at(s.order, a).is_zero())
    return {false, "action does not satisfy the minimal polynomial of the order generator"};
  if (a.transpose() * e != e * a) return {false, "action is not symmetric (A^T E != E A)"};
  return {};
}

Int pfaffian(const PolarizedRMSurface& s) { return pfaffian4(s.gram); }

Int degree(const PolarizedRMSurface& s) {
  const Int pf = pfaffian4(s.gram);
  if (pf == 0) throw std::domain_error("degenerate polarization");
  return pf * pf;
}

Matrix element_action(const PolarizedRMSurface& s, const OrderElement& a) {
  return a.x * Matrix::identity(kRank) + a.y * s.action;
}

KernelSubgroup KernelSubgroup::from_generators(const Matrix& gens, const Int& denominator) {
  if (denominator < 1) throw std::invalid_argument("kernel denominator must be positive");
  Matrix all = (denominator * Matrix::identity(gens.rows())).hconcat(gens);
  Matrix basis = column_hermite_basis(all);
  Int g = gcd(basis.content(), denominator);
  KernelSubgroup k;
  k.basis = *basis.divided_exactly(g);
  k.denominator = denominator / g;
  return k;
}

KernelSubgroup KernelSubgroup::trivial() {
  return KernelSubgroup{Matrix::identity(kRank), 1};
}

Int KernelSubgroup::order() const {
  return pow(denominator, static_cast<unsigned>(basis.rows())) / abs(determinant(basis));
}

Int KernelSubgroup::exponent() const {
  return denominator / gcd(denominator, basis.content());
}

Rational KernelSubgroup::entry(std::size_t i, std::size_t j) const {
  return Rational(basis(i, j), denominator);
}

bool is_canonical_overlattice(const KernelSubgroup& k) {
  if (k.basis.rows() != kRank || k.basis.cols() != kRank || k.denominator < 1) return false;
  if (gcd(k.basis.content(), k.denominator) != 1) return false;
  if (column_hermite_basis(k.basis) != k.basis) return false;
  // L <= L' iff denominator * e_i lies in the column lattice of basis.
  for (std::size_t i = 0; i < kRank; ++i) {
    Vector target(kRank);
    target[i] = k.denominator;
    if (!solve_in_lattice(k.basis, target)) return false;
  }
  return true;
}

KernelGenerators kernel_generators(const PolarizedRMSurface& s) {
  // U E V = D  =>  L* = E^{-1} Z^4 = V D^{-1} Z^4.
  SmithForm snf = smith_normal_form(s.gram);
  KernelGenerators out;
  for (std::size_t i = 0; i < kRank; ++i) {
    if (snf.diagonal[i] == 0) throw std::domain_error("degenerate polarization");
    out.lifts.push_back(snf.right.column(i));
    out.divisors[i] = snf.diagonal[i];
  }
  return out;
}

PolarizationKernel kernel_of_polarization(const PolarizedRMSurface& s) {
  const Int det = determinant(s.gram);
  if (det == 0) throw std::domain_error("degenerate polarization");
  PolarizationKernel out;
  out.subgroup = KernelSubgroup::from_generators(adjugate(s.gram), abs(det));
  if (det < 0) throw std::logic_error("alternating form with negative determinant");
  out.divisors = kernel_generators(s).divisors;
  if (out.divisors[0] != out.divisors[1] || out.divisors[2] != out.divisors[3])
    throw std::logic_error("elementary divisors of an alternating form are not paired");
  return out;
}

Int primitive_pfaffian(const PolarizedRMSurface& s) {
  const auto d = kernel_of_polarization(s).divisors;
  return d[2] / d[0];
}

Matrix torsion_pairing(const PolarizedRMSurface& s, const Int& m) {
  if (m < 1) throw std::invalid_argument("torsion level must be positive");
  return s.gram.mod(m);
}

Rational weil_on_kernel(const PolarizedRMSurface& s, const RationalVector& a,
                        const RationalVector& a_prime) {
  if (a.size() != kRank || a_prime.size() != kRank)
    throw std::invalid_argument("kernel lifts must have 4 coordinates");
  for (const auto* v : {&a, &a_prime})
    for (std::size_t i = 0; i < kRank; ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < kRank; ++j) row += Rational(s.gram(i, j)) * (*v)[j];
      if (boost::multiprecision::denominator(row) != 1)
        throw std::invalid_argument("lift is not in the dual lattice");
    }
  Rational value = 0;
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kRank; ++j) value += a[i] * Rational(s.gram(i, j)) * a_prime[j];
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  return Rational(mod_floor(num, den), den);
}

std::vector<Vector> torsion_kernel_of(const Matrix& m, const Int& modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  if (modulus == 1) return {};
  if (is_prime(modulus) && modulus < Int(1) << 31) {
    const auto p = modulus.convert_to<std::int64_t>();
    std::vector<Vector> out;
    for (const auto& row : modp::nullspace(modp::from_matrix(m, p))) {
      Vector v;
      for (auto x : row) v.emplace_back(x);
      out.push_back(std::move(v));
    }
    return out;
  }
  // U M V = D: M x = 0 mod m  <=>  d_i y_i = 0 mod m with y = V^{-1} x.
  SmithForm snf = smith_normal_form(m);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const Int d = i < snf.diagonal.size() ? snf.diagonal[i] : Int(0);
    const Int step = modulus / gcd(d, modulus);
    if (step == modulus) continue;
    Vector v = snf.right.column(i);
    for (auto& x : v) x = mod_floor(x * step, modulus);
    out.push_back(std::move(v));
  }
  return out;
}

RealQuadraticOrder stabilizer_order(const PolarizedRMSurface& s) {
  const Int f = s.order.conductor;
  for (const auto& g_candidate : [&] {
         std::vector<Int> divisors;
         for (Int g = 1; g <= f; ++g)
           if (f % g == 0) divisors.push_back(g);
         return divisors;
       }()) {
    if (s.action.divided_exactly(f / g_candidate)) return make_order(s.order.D, g_candidate);
  }
  return s.order;
}

PolarizedRMSurface reseat_to_stabilizer(const PolarizedRMSurface& s) {
  RealQuadraticOrder stab = stabilizer_order(s);
  if (stab == s.order) return s;
  return {stab, *s.action.divided_exactly(s.order.conductor / stab.conductor), s.gram};
}

PolarizedRMSurface standard_instance(const RealQuadraticOrder& order) {
  const Int& t = order.trace;
  const Int& n = order.norm;
  // w*1 = w, w*w = t w - n; on the dual basis w*e1* = -n e2*, w*e2* = e1* + t e2*.
  Matrix a{{0, 0, -n, 0}, {0, 0, 0, 1}, {1, 0, t, 0}, {0, -n, 0, t}};
  Matrix e{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  PolarizedRMSurface s{order, a, e};
  if (!validate(s)) throw std::logic_error("standard_instance: " + validate(s).diagnostic);
  return s;
}

PolarizedRMSurface twist_by_alpha(const PolarizedRMSurface& s, const OrderElement& alpha) {
  if (alpha == OrderElement{0, 0}) throw std::invalid_argument("twist by zero");
  PolarizedRMSurface out{s.order, s.action, s.gram * element_action(s, alpha)};
  return canonicalize_pfaffian_sign(out);
}

PolarizedRMSurface eigen_sublattice_pullback(const PolarizedRMSurface& s, const Int& ell,
                                             int eigenvalue_index) {
  small_prime_or_throw(ell);
  if (eigenvalue_index != 0 && eigenvalue_index != 1)
    throw std::invalid_argument("eigenvalue_index must be 0 or 1");
  if (splitting_type(s.order, ell) != SplittingType::split)
    throw std::invalid_argument("eigen_sublattice_pullback needs a split prime not dividing f");
  if (degree(s) % ell == 0)
    throw std::invalid_argument("eigen_sublattice_pullback needs ell coprime to the degree");
  std::vector<Int> roots;
  for (Int r = 0; r < ell; ++r)
    if (mod_floor(r * r - s.order.trace * r + s.order.norm, ell) == 0) roots.push_back(r);
  if (roots.size() != 2) throw std::domain_error("eigenvalues are not distinct in the prime field");
  const Int root = roots[static_cast<std::size_t>(eigenvalue_index)];
  const auto p = ell.convert_to<std::int64_t>();
  Matrix shifted = (s.action - root * Matrix::identity(kRank)).transpose();
  auto left = modp::nullspace(modp::from_matrix(shifted, p));
  if (left.empty()) throw std::logic_error("no left eigenvector for an eigenvalue");
  // Sublattice {x : phi . x = 0 mod ell}.
  modp::Mat phi{p, {left.front()}};
  std::vector<Vector> gens;
  for (const auto& h : modp::nullspace(phi)) {
    Vector v;
    for (auto x : h) v.emplace_back(x);
    gens.push_back(std::move(v));
  }
  Matrix sub = column_hermite_basis((ell * Matrix::identity(kRank)).hconcat(Matrix::from_columns(gens)));
  auto action = conjugate_integral(sub, s.action);
  if (!action) throw std::logic_error("eigen hyperplane is not action-stable");
  PolarizedRMSurface out{s.order, *action, sub.transpose() * s.gram * sub};
  return canonicalize_pfaffian_sign(out);
}

PolarizedRMSurface change_basis(const PolarizedRMSurface& s, const Matrix& u) {
  const Int det = determinant(u);
  if (abs(det) != 1) throw std::invalid_argument("change_basis needs a unimodular matrix");
  return {s.order, *conjugate_integral(u, s.action), u.transpose() * s.gram * u};
}

PolarizedRMSurface canonicalize_pfaffian_sign(const PolarizedRMSurface& s) {
  if (pfaffian4(s.gram) >= 0) return s;
  Matrix swap{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  return change_basis(s, swap);
}

}  // namespace rmlattice
