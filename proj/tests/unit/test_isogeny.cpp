#include <random>

#include "rmlattice/modp.hpp"
#include "test_support.hpp"

using namespace rmlattice;
using namespace rmlattice::testing;

namespace {

PolarizedRMSurface scaled(const PolarizedRMSurface& s, const Int& c) {
  return {s.order, s.action, c * s.gram};
}

Vector random_vector(std::mt19937_64& rng, long bound) {
  Vector v(4);
  for (auto& x : v) x = random_int(rng, -bound, bound);
  return v;
}

Vector times(const Int& c, Vector v) {
  for (auto& x : v) x *= c;
  return v;
}

// Instances whose polarization kernel meets A[ell] or A[ell^2] nontrivially.
std::vector<PolarizedRMSurface> kernel_rich_instances(const Int& ell, std::uint64_t seed) {
  std::vector<PolarizedRMSurface> out;
  const auto base = generate_instance(13, 1, {}, seed);
  out.push_back(scaled(base, ell));
  out.push_back(scaled(base, ell * ell));
  out.push_back({base.order, base.action, base.gram * element_action(base, {ell, 1})});
  out.push_back(generate_instance(13, 1, {3, 3}, seed + 1));
  out.push_back(generate_instance(5, 1, {5, 11}, seed + 2));
  out.push_back(generate_instance(5, 3, {5}, seed + 3));
  return out;
}

// Random subgroup of A[ell^2]: one or two generators, some inside ker(lambda).
KernelSubgroup random_subgroup(std::mt19937_64& rng, const PolarizedRMSurface& s, const Int& ell) {
  const auto gens = kernel_generators(s);
  const Int m = ell * ell;
  const std::size_t count = 1 + rng() % 3;
  Matrix g(4, count);
  for (std::size_t c = 0; c < count; ++c) {
    Vector v = random_vector(rng, 20);
    if (rng() % 2 == 0) {
      // c * lift_i / gcd(d_i, m): an element of ker(lambda) killed by m.
      v.assign(4, Int(0));
      for (std::size_t i = 0; i < 4; ++i) {
        const Int d = gcd(gens.divisors[i], m);
        const Int coeff = random_int(rng, 0, 8) * (m / d);
        for (std::size_t r = 0; r < 4; ++r) v[r] += coeff * gens.lifts[i][r];
      }
    }
    for (std::size_t r = 0; r < 4; ++r) g(r, c) = v[r];
  }
  return KernelSubgroup::from_generators(g, m);
}

}  // namespace

TEST_SUITE("isogeny") {
  TEST_CASE("step kind names round-trip") {
    for (auto k : {StepKind::quotient, StepKind::divide_by_alpha, StepKind::scale})
      CHECK(parse_step_kind(to_string(k)) == k);
    CHECK_FALSE(parse_step_kind("Quotient").has_value());
  }

  TEST_CASE("quotient_lattice examples") {
    const auto s = generate_instance(5, 1, {11}, 21);
    auto q = quotient_lattice(s, KernelSubgroup::trivial());
    CHECK(q.basis == Matrix::identity(4));
    CHECK(q.denominator == 1);
    CHECK(q.action == s.action);

    q = quotient_lattice(s, KernelSubgroup::from_generators(Matrix::identity(4), 3));
    CHECK(q.basis == Matrix::identity(4));
    CHECK(q.denominator == 3);
    CHECK(q.action == s.action);

    // A line that is not an eigenline of the action.
    const auto unstable = KernelSubgroup::from_generators(Matrix{{1}, {0}, {0}, {0}}, 3);
    CHECK_THROWS_AS(quotient_lattice(standard(5), unstable), std::invalid_argument);
  }

  TEST_CASE("descend_polarization examples") {
    const auto s0 = generate_instance(13, 3, {}, 5);
    const auto s = scaled(s0, 25);
    const auto full = KernelSubgroup::from_generators(Matrix::identity(4), 5);
    auto d = descend_polarization(s, full);
    REQUIRE(d.surface);
    CHECK(d.surface->gram == s0.gram);
    CHECK(degree(*d.surface) == 1);
    CHECK(degree(s) == degree(*d.surface) * full.order() * full.order());

    const auto fails = descend_polarization(s0, full);
    CHECK_FALSE(fails.surface);
    REQUIRE(fails.violation);

    // Principal: every nontrivial stable kernel fails.
    const auto p = standard(13);
    const auto lambda = polarization_torsion(p, 3);
    CHECK(lambda.empty());
    for (const auto& row : alpha_torsion(p, *solve_norm(p.order, 3), 3)) {
      const auto k = kernel_from_torsion({row}, 3);
      if (k.order() == 1) continue;
      try {
        CHECK_FALSE(descend_polarization(p, k).surface);
      } catch (const std::invalid_argument&) {
      }
    }
  }

  TEST_CASE("descent criteria agree on random subgroups") {
    int checked = 0, positive = 0;
    for (long ell : {3, 5}) {
      std::mt19937_64 rng(1000 + ell);
      const auto instances = kernel_rich_instances(ell, 40 + ell);
      for (int trial = 0; trial < 100; ++trial) {
        const auto& s = instances[trial % instances.size()];
        const auto k = random_subgroup(rng, s, ell);
        const bool integral = descent_integrality_criterion(s, k);
        CHECK(integral == descent_kernel_criterion(s, k));
        ++checked;
        positive += integral;
      }
    }
    CHECK(checked == 200);
    CHECK(positive > 20);
    CHECK(positive < 180);
  }

  TEST_CASE("descended surfaces validate and obey the ledger") {
    for (long ell : {3, 5}) {
      for (const auto& s : kernel_rich_instances(ell, 90 + ell)) {
        for (const auto& k : enumerate_valid_kernels(s, ell)) {
          const auto d = descend_polarization(s, k);
          REQUIRE(d.surface);
          CHECK(validate(*d.surface));
          CHECK(degree(s) == degree(*d.surface) * k.order() * k.order());
        }
      }
    }
  }

  TEST_CASE("quotient is functorial along chains") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 40; ++trial) {
      const auto s = generate_instance(13, 1, {}, 500 + trial);
      const Vector v = random_vector(rng, 9), w = random_vector(rng, 9);
      const Vector av = s.action * v, aw = s.action * w;
      const auto k1 = KernelSubgroup::from_generators(Matrix::from_columns({v, av}), 3);
      const auto k2 = KernelSubgroup::from_generators(Matrix::from_columns({times(3, v), times(3, av), w, aw}), 9);
      const auto q1 = quotient_lattice(s, k1);
      const auto q2 = quotient_lattice(s, k2);
      // K2 / K1 in the coordinates of L1 = B1 Z^4 / d1.
      const Matrix relative = adjugate(q1.basis) * q2.basis * q1.denominator;
      const Int rel_den = determinant(q1.basis) * q2.denominator;
      REQUIRE(rel_den > 0);
      const PolarizedRMSurface s1{s.order, q1.action, s.gram};
      const auto k21 = KernelSubgroup::from_generators(relative, rel_den);
      const auto q21 = quotient_lattice(s1, k21);
      const auto composite = KernelSubgroup::from_generators(q1.basis * q21.basis, q1.denominator * q21.denominator);
      CHECK(composite == k2);
      CHECK(induced_endomorphism(q1.basis * q21.basis, q1.denominator * q21.denominator, s.action) ==
            q21.action);
      CHECK(k2.order() == k1.order() * k21.order());
    }
  }

  TEST_CASE("divide_by_symmetric examples") {
    const auto s0 = generate_instance(5, 1, {}, 8);
    const auto s = twist_by_alpha(s0, {3, 1});
    auto back = divide_by_symmetric({s.order, s.action, s0.gram * element_action(s0, {3, 1})}, {3, 1});
    REQUIRE(back);
    CHECK(back->gram == s0.gram);

    CHECK_THROWS_AS(divide_by_symmetric(s0, {0, 1}), std::invalid_argument);  // unit
    CHECK_THROWS_AS(divide_by_symmetric(s0, {0, 0}), std::invalid_argument);
    CHECK_FALSE(divide_by_symmetric(s0, {3, 1}).has_value());

    const auto s3 = standard(5, 3);
    CHECK_FALSE(divide_by_symmetric(s3, {0, 1}).has_value());

    const auto by_ell = divide_by_symmetric(scaled(s0, 7), {7, 0});
    REQUIRE(by_ell);
    CHECK(by_ell->gram == s0.gram);
    CHECK(degree(scaled(s0, 7)) == degree(*by_ell) * 2401);
  }

  TEST_CASE("divide_by_symmetric outputs are antisymmetric and symmetric for the action") {
    for (long D : {2, 5, 13})
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s0 = generate_instance(D, 1, {}, seed);
        std::mt19937_64 rng(seed);
        const OrderElement a{random_int(rng, 1, 9), random_int(rng, -9, 9)};
        if (abs(norm(s0.order, a)) <= 1) continue;
        const auto t = twist_by_alpha(s0, a);
        const auto back = divide_by_symmetric(t, a);
        REQUIRE(back);
        CHECK(validate(*back));
        CHECK(degree(t) == degree(*back) * norm(s0.order, a) * norm(s0.order, a));
      }
  }

  TEST_CASE("induced_endomorphism examples") {
    const auto s = generate_instance(5, 3, {}, 2);
    CHECK(induced_endomorphism(Matrix::identity(4), 1, s.action) == s.action);
    CHECK(induced_endomorphism(Matrix::identity(4), 7, s.action) == s.action);
    const auto line = KernelSubgroup::from_generators(Matrix{{1}, {0}, {0}, {0}}, 3);
    CHECK_FALSE(induced_endomorphism(line.basis, line.denominator, standard(5).action).has_value());
    CHECK_THROWS_AS(induced_endomorphism(Matrix(4, 4), 1, s.action), std::invalid_argument);
  }

  TEST_CASE("ledger_holds") {
    IsogenyStep q{StepKind::quotient, 11, KernelSubgroup::from_generators(Matrix{{1}, {0}, {0}, {0}}, 11),
                  std::nullopt, 121, 1, std::nullopt, std::nullopt};
    CHECK(ledger_holds(q));
    q.degree_after = 11;
    CHECK_FALSE(ledger_holds(q));
    IsogenyStep d{StepKind::divide_by_alpha, 11, std::nullopt, OrderElement{3, 1}, 121 * 9, 9, std::nullopt,
                  std::nullopt};
    CHECK(ledger_holds(d));
    d.alpha.reset();
    CHECK_FALSE(ledger_holds(d));
    IsogenyStep sc{StepKind::scale, 3, std::nullopt, std::nullopt, 81, 1, std::nullopt, std::nullopt};
    CHECK(ledger_holds(sc));
    sc.degree_before = 9;
    CHECK_FALSE(ledger_holds(sc));
  }
}
