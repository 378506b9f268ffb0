#include <set>

#include "rmlattice/errors.hpp"
#include "test_support.hpp"

using namespace rmlattice;
using namespace rmlattice::testing;

namespace {

struct Case {
  PolarizedRMSurface surface;
  Int ell;
};

// Instances with ell | degree, ell reducible and prime to the conductor.
std::vector<Case> sr_corpus() {
  std::vector<Case> out;
  std::uint64_t seed = 300;
  for (long D : {2, 3, 5, 13, 17})
    for (long f : {1, 3})
      for (long ell = 3; ell <= 31; ell += 2) {
        if (!is_prime(ell) || f % ell == 0 || !factor_ell(make_order(D, 1), ell)) continue;
        for (const std::vector<Int>& primes : {std::vector<Int>{ell}, {ell, ell}})
          out.push_back({generate_instance(D, f, primes, seed++), ell});
      }
  return out;
}

}  // namespace

TEST_SUITE("algorithms") {
  TEST_CASE("branch names round-trip") {
    for (auto b : {SrBranch::split_quotient, SrBranch::split_divide, SrBranch::associate_quotient,
                   SrBranch::associate_divide})
      CHECK(parse_sr_branch(to_string(b)) == b);
    CHECK_FALSE(parse_sr_branch("divide").has_value());
  }

  TEST_CASE("sqf_reduce examples") {
    const auto p = standard(13);
    auto r = sqf_reduce(p, 3);
    CHECK(r.steps.empty());
    CHECK(r.surface == p);

    r = sqf_reduce({p.order, p.action, 3 * p.gram}, 3);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].kind == StepKind::scale);
    CHECK(degree(r.surface) == 1);

    const OrderElement a1 = *solve_norm(p.order, 3);
    const auto deep = twist_by_alpha(p, multiply(p.order, a1, a1));
    REQUIRE(kernel_of_polarization(deep).divisors == std::array<Int, 4>{1, 1, 9, 9});
    r = sqf_reduce(deep, 3);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].kind == StepKind::quotient);
    REQUIRE(r.steps[0].kernel);
    CHECK(r.steps[0].kernel->order() == 9);
    CHECK(degree(r.surface) == 1);

    CHECK_THROWS_AS(sqf_reduce(p, 2), std::invalid_argument);
  }

  TEST_CASE("sqf_reduce postcondition on a mixed corpus") {
    std::uint64_t seed = 10;
    for (long D : {5, 13})
      for (const std::vector<Int>& primes :
           {std::vector<Int>{11, 11}, {11, 11, 11}, {11, 11, 11, 11}, {3, 3, 3}, {17, 17}}) {
        const Int ell = primes.front();
        if (!factor_ell(make_order(D, 1), ell)) continue;
        const auto s = generate_instance(D, 1, primes, seed++);
        const auto r = sqf_reduce(s, ell);
        Int prev = degree(s);
        for (const auto& st : r.steps) {
          CHECK(ledger_holds(st));
          CHECK(st.degree_before == prev);
          CHECK(valuation(st.degree_after, ell) < valuation(st.degree_before, ell));
          prev = st.degree_after;
        }
        CHECK(validate(r.surface));
        const auto div = kernel_of_polarization(r.surface).divisors;
        CHECK(valuation(div[0], ell) == 0);
        CHECK(valuation(div[2], ell) <= 1);
        const auto lambda = polarization_torsion(r.surface, ell);
        CHECK((lambda.size() == 0 || lambda.size() == 2));
      }
  }

  TEST_CASE("max_step examples") {
    const auto s = standard(5, 3);
    const auto r = max_step(s, 3);
    CHECK(degree(r.surface) == 1);
    CHECK(stabilizer_order(r.surface).conductor == 1);
    CHECK(r.step.t == 2);
    REQUIRE(r.step.kernel);
    CHECK(r.step.kernel->order() == 729);
    CHECK(ledger_holds(r.step));
    CHECK(validate(r.surface));

    CHECK_THROWS_AS(max_step(standard(5), 3), HypothesisError);
    CHECK_THROWS_AS(max_step(twist_by_alpha(standard(5, 3), {3, 0}), 3), HypothesisError);
  }

  TEST_CASE("max_step preserves degree with t = 2") {
    std::uint64_t seed = 70;
    for (long D : {2, 3, 5, 13, 17})
      for (long f : {3, 7, 9}) {
        const auto s = generate_instance(D, f, {}, seed++);
        auto cur = s;
        while (stabilizer_order(cur).conductor != 1) {
          const Int ell = factorize(stabilizer_order(cur).conductor).front().first;
          const auto r = max_step(cur, ell);
          CHECK(r.step.t == 2);
          CHECK(r.step.kernel->order() == pow(ell, 6));
          CHECK(degree(r.surface) == degree(cur));
          CHECK(stabilizer_order(cur).conductor % (ell * stabilizer_order(r.surface).conductor) == 0);
          cur = r.surface;
        }
      }
  }

  TEST_CASE("sr_step examples") {
    const auto p = standard(5);
    const auto t = twist_by_alpha(p, {3, 1});
    auto r = sr_step(t, 11);
    CHECK(degree(r.surface) == 1);
    REQUIRE(r.branch);
    CHECK(validate(r.surface));

    for (int idx : {0, 1}) {
      r = sr_step(eigen_sublattice_pullback(p, 11, idx), 11);
      CHECK(degree(r.surface) == 1);
    }

    const auto nine = twist_by_alpha(p, {3, 0});
    CHECK_THROWS_WITH_AS(sr_step(nine, 3), doctest::Contains("not reducible"), HypothesisError);
    CHECK_THROWS_AS(sr_step(p, 11), HypothesisError);
    CHECK_THROWS_AS(sr_step(twist_by_alpha(standard(13, 3), *solve_norm(make_order(13, 3), 17)), 3),
                    HypothesisError);
  }

  TEST_CASE("sr_step lowers the degree by ell^2 and keeps the order") {
    for (const auto& c : sr_corpus()) {
      const Int before = degree(c.surface);
      const auto r = sr_step(c.surface, c.ell);
      CHECK((before % (degree(r.surface) * c.ell * c.ell)) == 0);
      CHECK(validate(r.surface));
      CHECK(r.surface.order == stabilizer_order(c.surface));
      for (const auto& st : r.steps) CHECK(ledger_holds(st));
    }
  }

  // After sqf_reduce the pairing on Lambda[ell] ~ (Z/ell)^2 is nondegenerate.
  // In the split case both eigencomponents are isotropic lines and in the
  // ramified case Lambda[ell] is a cyclic R/ell-module, so a 1-dimensional
  // Lambda1 never occurs.
  TEST_CASE("only the divide branches are reachable") {
    std::set<SrBranch> seen;
    for (const auto& c : sr_corpus()) {
      const auto reduced = sqf_reduce(reseat_to_stabilizer(c.surface), c.ell).surface;
      if (degree(reduced) % c.ell != 0) continue;
      const auto lambda = polarization_torsion(reduced, c.ell);
      REQUIRE(lambda.size() == 2);
      RationalVector a, b;
      for (std::size_t i = 0; i < 4; ++i) {
        a.emplace_back(lambda[0][i], c.ell);
        b.emplace_back(lambda[1][i], c.ell);
      }
      CHECK(weil_on_kernel(reduced, a, b) != 0);

      const auto r = sr_step(c.surface, c.ell);
      REQUIRE(r.branch);
      seen.insert(*r.branch);
    }
    CHECK(seen == std::set<SrBranch>{SrBranch::split_divide, SrBranch::associate_divide});
  }

  TEST_CASE("principalize examples") {
    const auto base = standard(5, 3);
    const auto s = twist_by_alpha(base, *solve_norm(base.order, 11));
    REQUIRE(degree(s) == 121);
    const auto r = principalize(s);
    CHECK(degree(r.output) == 1);
    CHECK(stabilizer_order(r.output).conductor == 1);
    CHECK(validate(r.output));
    CHECK(r.input_degree == 121);
    CHECK(r.input_conductor == 3);
    CHECK(r.seed == fingerprint(s));
    CHECK(r.seed < (std::uint64_t{1} << 53));

    const auto trivial = principalize(standard(5));
    CHECK(trivial.steps.empty());
    CHECK(trivial.output == standard(5));

    CHECK_THROWS_AS(principalize(standard(5, 2)), HypothesisError);
    CHECK_THROWS_AS(principalize(twist_by_alpha(standard(2), {0, 1})), HypothesisError);  // degree 4
    CHECK_THROWS_AS(principalize(twist_by_alpha(standard(13, 3), {3, 0})), HypothesisError);
    auto broken = standard(5);
    broken.gram(0, 1) = 2;
    CHECK_THROWS_AS(principalize(broken), std::invalid_argument);
  }

  TEST_CASE("principalize telescopes and replays") {
    std::uint64_t seed = 900;
    for (long D : {2, 5, 13, 17})
      for (long f : {1, 3, 7}) {
        std::vector<Int> primes;
        for (long ell : {7, 11, 17, 19})
          if (f % ell != 0 && factor_ell(make_order(D, 1), ell)) primes.push_back(ell);
        if (primes.size() > 2) primes.resize(2);
        const auto s = generate_instance(D, f, primes, seed++);
        const auto r = principalize(s);
        CHECK(degree(r.output) == 1);
        CHECK(stabilizer_order(r.output).conductor == 1);
        Int expected = degree(s);
        auto cur = reseat_to_stabilizer(s);
        for (const auto& st : r.steps) {
          CHECK(st.degree_before == expected);
          CHECK(ledger_holds(st));
          cur = apply_step(cur, st);
          CHECK(degree(cur) == st.degree_after);
          expected = st.degree_after;
        }
        CHECK(cur == r.output);
        CHECK(principalize(s).steps == r.steps);
      }
  }

  TEST_CASE("apply_step rejects inconsistent steps") {
    const auto s = twist_by_alpha(standard(5), {3, 1});
    const auto r = principalize(s);
    REQUIRE_FALSE(r.steps.empty());
    auto st = r.steps.front();
    if (st.kind == StepKind::divide_by_alpha) {
      st.prime = 7;
      CHECK_THROWS_AS(apply_step(s, st), std::invalid_argument);
      st = r.steps.front();
      st.alpha.reset();
      CHECK_THROWS_AS(apply_step(s, st), std::invalid_argument);
    }
    IsogenyStep q{StepKind::quotient, 11, std::nullopt, std::nullopt, 121, 1, std::nullopt, std::nullopt};
    CHECK_THROWS_AS(apply_step(s, q), std::invalid_argument);
  }

  TEST_CASE("fingerprint is deterministic and sensitive") {
    const auto s = generate_instance(5, 3, {11}, 42);
    CHECK(fingerprint(s) == fingerprint(s));
    auto t = s;
    t.gram(0, 1) += 1;
    t.gram(1, 0) -= 1;
    CHECK(fingerprint(t) != fingerprint(s));
    CHECK(fingerprint(s) < (std::uint64_t{1} << 53));
  }
}
