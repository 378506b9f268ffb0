#include "rmlattice/generator.hpp"

#include <map>
#include <random>

#include "rmlattice/errors.hpp"

namespace rmlattice {

namespace {

constexpr std::size_t kRank = 4;

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

Matrix random_unimodular(std::mt19937_64& rng, int moves) {
  Matrix u = Matrix::identity(kRank);
  for (int m = 0; m < moves; ++m) {
    const std::size_t i = draw(rng, kRank);
    std::size_t j = draw(rng, kRank - 1);
    if (j >= i) ++j;
    switch (draw(rng, 4)) {
      case 0:
        for (std::size_t r = 0; r < kRank; ++r) std::swap(u(r, i), u(r, j));
        break;
      case 1:
        for (std::size_t r = 0; r < kRank; ++r) u(r, i) = -u(r, i);
        break;
      default: {
        const Int c = Int(draw(rng, 5)) - 2;
        for (std::size_t r = 0; r < kRank; ++r) u(r, i) += c * u(r, j);
      }
    }
  }
  return u;
}

}  // namespace

Matrix random_unimodular(std::uint64_t seed, int moves) {
  std::mt19937_64 rng(seed);
  return random_unimodular(rng, moves);
}

PolarizedRMSurface generate_instance(const Int& D, const Int& conductor,
                                     const std::vector<Int>& degree_primes, std::uint64_t seed) {
  const RealQuadraticOrder order = make_order(D, conductor);
  if (conductor % 2 == 0) throw HypothesisError("conductor " + to_string(conductor) + " is even");
  const RealQuadraticOrder maximal = make_order(D, 1);

  std::map<Int, unsigned> multiplicity;
  for (const auto& ell : degree_primes) {
    if (ell < 3 || !is_prime(ell)) throw HypothesisError(to_string(ell) + " is not an odd prime");
    if (conductor % ell == 0)
      throw HypothesisError(to_string(ell) + " divides the conductor " + to_string(conductor));
    if (!factor_ell(maximal, ell))
      throw HypothesisError(to_string(ell) + " is not reducible in the maximal order of Q(sqrt " +
                            to_string(D) + ")");
    ++multiplicity[ell];
  }

  std::mt19937_64 rng(seed);
  const OrderElement unit = fundamental_unit(order);
  PolarizedRMSurface s = standard_instance(order);
  for (const auto& [ell, count] : multiplicity) {
    const auto alpha = solve_norm(order, ell);
    const bool split = splitting_type(order, ell) == SplittingType::split;
    unsigned remaining = count;
    while (remaining > 0) {
      const bool can_pull_back = split && degree(s) % ell != 0;
      const bool must_scale = !alpha && remaining >= 2 && (remaining % 2 == 0 || !can_pull_back);
      if (remaining >= 2 && (must_scale || draw(rng, 3) == 0)) {
        s = twist_by_alpha(s, {ell, 0});
        remaining -= 2;
        continue;
      }
      if (!alpha && !can_pull_back)
        throw HypothesisError("no element of norm +-" + to_string(ell) + " in the order of conductor " +
                              to_string(conductor) + " to realize the degree");
      if (alpha && (!can_pull_back || draw(rng, 2) == 0)) {
        OrderElement a = draw(rng, 2) ? *alpha : conjugate(order, *alpha);
        a = multiply(order, a, power(order, unit, static_cast<int>(draw(rng, 3)) - 1));
        if (draw(rng, 2)) a = OrderElement{-a.x, -a.y};
        s = twist_by_alpha(s, a);
      } else {
        s = eigen_sublattice_pullback(s, ell, static_cast<int>(draw(rng, 2)));
      }
      --remaining;
    }
  }
  s = canonicalize_pfaffian_sign(change_basis(s, random_unimodular(rng, 8)));
  if (auto v = validate(s); !v) throw InvariantError("generated instance is invalid: " + v.diagnostic);
  return s;
}

}  // namespace rmlattice
