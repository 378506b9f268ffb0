#include "rmlattice/algorithms.hpp"

#include <random>
#include <stdexcept>

#include "rmlattice/errors.hpp"

namespace rmlattice {

namespace {

constexpr std::size_t kRank = 4;

std::int64_t small_prime(const Int& ell) {
  if (ell == 2 || !is_prime(ell))
    throw std::invalid_argument("expected an odd prime, got " + to_string(ell));
  if (ell >= Int(1) << 31) throw std::invalid_argument("prime too large: " + to_string(ell));
  return ell.convert_to<std::int64_t>();
}

Matrix rows_as_columns(const std::vector<modp::Row>& rows) {
  std::vector<Vector> cols;
  for (const auto& r : rows) {
    Vector v;
    for (auto x : r) v.emplace_back(x);
    cols.push_back(std::move(v));
  }
  if (cols.empty()) return Matrix(kRank, 0);
  return Matrix::from_columns(cols);
}

void require_valid(const PolarizedRMSurface& s, const char* where) {
  if (auto v = validate(s); !v) throw InvariantError(std::string(where) + ": " + v.diagnostic);
}

Int smallest_prime_factor(const Int& n) { return factorize(n).front().first; }

// Random element of L* as a rational vector.
RationalVector random_dual_element(const PolarizedRMSurface& s, std::mt19937_64& rng) {
  KernelGenerators gens = kernel_generators(s);
  RationalVector out(kRank, Rational(0));
  for (std::size_t i = 0; i < kRank; ++i) {
    const Int c = Int(rng() % 1000) - 500;
    for (std::size_t r = 0; r < kRank; ++r) out[r] += Rational(c * gens.lifts[i][r], gens.divisors[i]);
  }
  return out;
}

void spot_check_pairing(const PolarizedRMSurface& s, std::mt19937_64& rng) {
  for (int trial = 0; trial < 4; ++trial) {
    RationalVector a = random_dual_element(s, rng);
    RationalVector b = random_dual_element(s, rng);
    RationalVector a_shift = a;
    for (auto& x : a_shift) x += Int(rng() % 7) - 3;
    const Rational ab = weil_on_kernel(s, a, b);
    if (weil_on_kernel(s, a_shift, b) != ab)
      throw InvariantError("pairing depends on the choice of lift");
    if (weil_on_kernel(s, a, a) != 0) throw InvariantError("pairing is not alternating");
    const Rational ba = weil_on_kernel(s, b, a);
    if (boost::multiprecision::denominator(Rational(ab + ba)) != 1)
      throw InvariantError("pairing is not antisymmetric");
  }
}

PolarizedRMSurface scale_down(const PolarizedRMSurface& s, const Int& ell) {
  auto gram = s.gram.divided_exactly(ell);
  if (!gram) throw std::invalid_argument("form is not divisible by " + to_string(ell));
  return {s.order, s.action, *gram};
}

// Conductor step with a prescribed kernel; shared by max_step and replay.
PolarizedRMSurface conductor_quotient(const PolarizedRMSurface& s, const KernelSubgroup& k,
                                      const Int& ell) {
  if (s.order.conductor % ell != 0)
    throw std::invalid_argument("prime does not divide the conductor");
  DescentResult d = descend_scaled_polarization(s, k, pow(ell, 3));
  if (!d.surface) throw std::invalid_argument("scaled form does not descend to the overlattice");
  auto action = d.surface->action.divided_exactly(ell);
  if (!action) throw std::invalid_argument("induced action is not divisible by the prime");
  PolarizedRMSurface out{make_order(s.order.D, s.order.conductor / ell), *action,
                         d.surface->gram};
  return reseat_to_stabilizer(out);
}

}  // namespace

std::string to_string(SrBranch branch) {
  switch (branch) {
    case SrBranch::split_quotient:
      return "split_quotient";
    case SrBranch::split_divide:
      return "split_divide";
    case SrBranch::associate_quotient:
      return "associate_quotient";
    case SrBranch::associate_divide:
      return "associate_divide";
  }
  return "unknown";
}

std::optional<SrBranch> parse_sr_branch(const std::string& name) {
  for (auto b : {SrBranch::split_quotient, SrBranch::split_divide, SrBranch::associate_quotient,
                 SrBranch::associate_divide})
    if (to_string(b) == name) return b;
  return std::nullopt;
}

std::vector<modp::Row> polarization_torsion(const PolarizedRMSurface& s, const Int& ell) {
  return modp::nullspace(modp::from_matrix(s.gram, small_prime(ell)));
}

std::vector<modp::Row> alpha_torsion(const PolarizedRMSurface& s, const OrderElement& alpha,
                                     const Int& ell) {
  return modp::nullspace(modp::from_matrix(element_action(s, alpha), small_prime(ell)));
}

KernelSubgroup kernel_from_torsion(const std::vector<modp::Row>& rows, const Int& ell) {
  return KernelSubgroup::from_generators(rows_as_columns(rows), ell);
}

ReductionResult sqf_reduce(const PolarizedRMSurface& s, const Int& ell) {
  small_prime(ell);
  ReductionResult out{s, {}};
  while (true) {
    PolarizedRMSurface& cur = out.surface;
    const Int before = degree(cur);
    const unsigned v_before = valuation(before, ell);
    IsogenyStep step;
    step.prime = ell;
    step.degree_before = before;
    if (cur.gram.mod(ell).is_zero()) {
      step.kind = StepKind::scale;
      cur = scale_down(cur, ell);
    } else {
      KernelGenerators gens = kernel_generators(cur);
      std::vector<Vector> deep;
      for (std::size_t i = 0; i < kRank; ++i)
        if (gens.divisors[i] % (ell * ell) == 0) deep.push_back(gens.lifts[i]);
      if (deep.empty()) break;
      // ell * Lambda[ell^2] is spanned by v_i / ell over the divisors with ell^2 | d_i.
      KernelSubgroup k = KernelSubgroup::from_generators(Matrix::from_columns(deep), ell);
      DescentResult d = descend_polarization(cur, k);
      if (!d.surface) throw InvariantError("ell * Lambda[ell^2] does not descend");
      step.kind = StepKind::quotient;
      step.kernel = k;
      cur = *d.surface;
    }
    step.degree_after = degree(cur);
    if (!ledger_holds(step)) throw InvariantError("sqf_reduce ledger mismatch");
    if (valuation(step.degree_after, ell) >= v_before)
      throw InvariantError("sqf_reduce did not lower the ell-valuation of the degree");
    require_valid(cur, "sqf_reduce");
    out.steps.push_back(std::move(step));
  }
  const auto divisors = kernel_generators(out.surface).divisors;
  for (const auto& d : divisors)
    if (valuation(d, ell) > 1) throw InvariantError("sqf_reduce left an ell^2 divisor");
  return out;
}

MaxStepResult max_step(const PolarizedRMSurface& s, const Int& ell) {
  const std::int64_t p = small_prime(ell);
  const PolarizedRMSurface cur = reseat_to_stabilizer(s);
  if (cur.order.conductor % ell != 0)
    throw HypothesisError(to_string(ell) + " does not divide the stabilizer conductor " +
                          to_string(cur.order.conductor));
  const Int deg = degree(cur);
  if (deg % ell == 0)
    throw HypothesisError(to_string(ell) + " divides the polarization degree " + to_string(deg));

  const int t = static_cast<int>(modp::rank(modp::from_matrix(cur.action, p)));
  if (t != 2) throw InvariantError("max_step: image of w_g on A[ell] has dimension " +
                                   std::to_string(t) + ", expected 2");
  KernelSubgroup k =
      KernelSubgroup::from_generators((ell * Matrix::identity(kRank)).hconcat(cur.action), ell * ell);
  if (k.order() != pow(ell, 4 + static_cast<unsigned>(t)))
    throw InvariantError("max_step: kernel order is not ell^(4+t)");

  PolarizedRMSurface next;
  try {
    next = conductor_quotient(cur, k, ell);
  } catch (const std::invalid_argument& e) {
    throw InvariantError(std::string("max_step: ") + e.what());
  }
  IsogenyStep step;
  step.kind = StepKind::quotient;
  step.prime = ell;
  step.kernel = k;
  step.degree_before = deg;
  step.degree_after = degree(next);
  step.t = t;
  if (step.degree_after != deg) throw InvariantError("max_step changed the degree");
  if (!ledger_holds(step)) throw InvariantError("max_step ledger mismatch");
  if ((cur.order.conductor / ell) % next.order.conductor != 0)
    throw InvariantError("max_step: stabilizer conductor does not divide f/ell");
  require_valid(next, "max_step");
  return {next, step};
}

SrStepResult sr_step(const PolarizedRMSurface& s, const Int& ell) {
  const std::int64_t p = small_prime(ell);
  const Int deg = degree(s);
  if (deg % ell != 0)
    throw HypothesisError(to_string(ell) + " does not divide the degree " + to_string(deg));
  if (s.order.conductor % ell == 0)
    throw HypothesisError(to_string(ell) + " divides the conductor");
  const auto factors = factor_ell(s.order, ell);
  if (!factors)
    throw HypothesisError(to_string(ell) + " is not reducible in the order (D=" +
                          to_string(s.order.D) + ", f=" + to_string(s.order.conductor) + ")");

  ReductionResult reduced = sqf_reduce(s, ell);
  SrStepResult out{reduced.surface, std::move(reduced.steps), std::nullopt, std::nullopt};
  const PolarizedRMSurface cur = out.surface;
  const Int before = degree(cur);
  if (before % ell != 0) return out;
  if (valuation(before, ell) != 2) throw InvariantError("ell-part of the degree is not ell^2");

  const auto lambda = polarization_torsion(cur, ell);
  if (lambda.size() != 2) throw InvariantError("Lambda[ell] is not 2-dimensional");
  const OrderElement& a1 = factors->first;
  const OrderElement& a2 = factors->second;
  const auto lambda1 = modp::intersect(lambda, alpha_torsion(cur, a1, ell), p, kRank);
  const auto lambda2 = modp::intersect(lambda, alpha_torsion(cur, a2, ell), p, kRank);
  const bool associates = are_associates_in_maximal(cur.order, a1, a2);

  std::optional<std::vector<modp::Row>> quotient_by;
  std::optional<OrderElement> divide_by;
  if (!associates) {
    BezoutPair bz;
    try {
      bz = bezout_conductor(a1, a2, cur.order);
    } catch (const std::domain_error&) {
      throw InvariantError("conductor is not in (alpha1, alpha2) for non-associate factors");
    }
    // alpha2 * beta2 / f projects A[ell] onto A[alpha1]; its image of Lambda[ell] is Lambda1.
    const modp::Mat proj =
        modp::from_matrix(element_action(cur, multiply(cur.order, a2, bz.beta2)), p);
    std::vector<modp::Row> image;
    for (const auto& v : lambda) image.push_back(modp::apply(proj, v));
    if (modp::span(image, p, kRank) != lambda1)
      throw InvariantError("Lambda1 differs from the Bezout projection of Lambda[ell]");

    if (!lambda1.empty() && !lambda2.empty()) {
      if (lambda1.size() != 1) throw InvariantError("split case: Lambda1 is not 1-dimensional");
      out.branch = SrBranch::split_quotient;
      quotient_by = lambda1;
    } else if (lambda2.empty() && lambda1.size() == 2) {
      out.branch = SrBranch::split_divide;
      divide_by = a1;
    } else if (lambda1.empty() && lambda2.size() == 2) {
      out.branch = SrBranch::split_divide;
      divide_by = a2;
    } else {
      throw InvariantError("Lambda[ell] is not the sum of its eigencomponents");
    }
  } else if (lambda1.size() == 1) {
    out.branch = SrBranch::associate_quotient;
    quotient_by = lambda1;
  } else if (lambda1.size() == 2) {
    out.branch = SrBranch::associate_divide;
    divide_by = a1;
  } else {
    throw InvariantError("associate case: Lambda1 is trivial");
  }

  IsogenyStep step;
  step.prime = ell;
  step.degree_before = before;
  step.branch = to_string(*out.branch);
  if (quotient_by) {
    KernelSubgroup k = kernel_from_torsion(*quotient_by, ell);
    DescentResult d = descend_polarization(cur, k);
    if (!d.surface) throw InvariantError("Lambda1 does not descend");
    step.kind = StepKind::quotient;
    step.kernel = k;
    out.kernel = k;
    out.surface = *d.surface;
  } else {
    auto divided = divide_by_symmetric(cur, *divide_by);
    if (!divided) throw InvariantError("ker(alpha) is not contained in ker(lambda)");
    step.kind = StepKind::divide_by_alpha;
    step.alpha = *divide_by;
    out.surface = *divided;
  }
  step.degree_after = degree(out.surface);
  if (!ledger_holds(step)) throw InvariantError("sr_step ledger mismatch");
  if ((deg / step.degree_after) % (ell * ell) != 0 || deg % step.degree_after != 0)
    throw InvariantError("sr_step did not lower the degree by ell^2");
  require_valid(out.surface, "sr_step");
  out.steps.push_back(std::move(step));
  return out;
}

std::uint64_t fingerprint(const PolarizedRMSurface& s) {
  std::string data = to_string(s.order.D) + ";" + to_string(s.order.conductor);
  for (const Matrix* m : {&s.action, &s.gram})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j) data += "," + to_string((*m)(i, j));
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h & ((std::uint64_t{1} << 53) - 1);
}

PipelineReport principalize(const PolarizedRMSurface& s) {
  if (auto v = validate(s); !v) throw std::invalid_argument("invalid instance: " + v.diagnostic);
  const Int deg = degree(s);
  const Int f = s.order.conductor;
  if (deg % 2 == 0) throw HypothesisError("degree " + to_string(deg) + " is even");
  if (f % 2 == 0) throw HypothesisError("conductor " + to_string(f) + " is even");
  if (gcd(deg, f) != 1)
    throw HypothesisError("degree " + to_string(deg) + " and conductor " + to_string(f) +
                          " are not coprime");

  PipelineReport report;
  report.seed = fingerprint(s);
  report.input_discriminant = s.order.discriminant;
  report.input_conductor = f;
  report.input_degree = deg;
  std::mt19937_64 rng(report.seed);

  PolarizedRMSurface cur = reseat_to_stabilizer(s);
  while (cur.order.conductor > 1) {
    MaxStepResult r = max_step(cur, smallest_prime_factor(cur.order.conductor));
    cur = r.surface;
    report.steps.push_back(std::move(r.step));
    spot_check_pairing(cur, rng);
  }
  for (const auto& [ell, multiplicity] : factorize(degree(cur))) {
    (void)multiplicity;
    while (degree(cur) % ell == 0) {
      SrStepResult r = sr_step(cur, ell);
      if (r.steps.empty()) throw InvariantError("sr_step made no progress");
      cur = r.surface;
      for (auto& st : r.steps) report.steps.push_back(std::move(st));
      spot_check_pairing(cur, rng);
    }
  }

  if (degree(cur) != 1) throw InvariantError("principalize ended with degree " + to_string(degree(cur)));
  if (stabilizer_order(cur).conductor != 1)
    throw InvariantError("principalize ended without maximal real multiplication");
  Int expected = deg;
  for (const auto& st : report.steps) {
    if (st.degree_before != expected) throw InvariantError("certificate does not telescope");
    expected = st.degree_after;
  }
  report.output = cur;
  return report;
}

PolarizedRMSurface apply_step(const PolarizedRMSurface& s, const IsogenyStep& step) {
  switch (step.kind) {
    case StepKind::scale:
      return scale_down(s, step.prime);
    case StepKind::divide_by_alpha: {
      if (!step.alpha) throw std::invalid_argument("divide step without alpha");
      if (abs(norm(s.order, *step.alpha)) != step.prime)
        throw std::invalid_argument("norm of alpha does not match the recorded prime");
      auto out = divide_by_symmetric(s, *step.alpha);
      if (!out) throw std::invalid_argument("form is not divisible by alpha");
      return *out;
    }
    case StepKind::quotient: {
      if (!step.kernel) throw std::invalid_argument("quotient step without kernel");
      if (step.t) return conductor_quotient(s, *step.kernel, step.prime);
      DescentResult d = descend_polarization(s, *step.kernel);
      if (!d.surface) throw std::invalid_argument("form does not descend to the kernel overlattice");
      return *d.surface;
    }
  }
  throw std::invalid_argument("unknown step kind");
}

}  // namespace rmlattice
