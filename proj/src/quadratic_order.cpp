#include "rmlattice/quadratic_order.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rmlattice/matrix.hpp"

namespace rmlattice {

namespace {

void require_odd_prime(const Int& ell) {
  if (ell == 2 || !is_prime(ell))
    throw std::invalid_argument("expected an odd prime, got " + to_string(ell));
}

Int l1(const OrderElement& a) { return abs(a.x) + abs(a.y); }

}  // namespace

RealQuadraticOrder make_order(const Int& D, const Int& conductor) {
  if (D < 2 || !is_squarefree(D))
    throw std::invalid_argument("D must be a squarefree integer >= 2, got " + to_string(D));
  if (conductor < 1)
    throw std::invalid_argument("conductor must be >= 1, got " + to_string(conductor));
  RealQuadraticOrder o;
  o.D = D;
  o.conductor = conductor;
  Int trace1, norm1;
  if (mod_floor(D, 4) == 1) {
    o.fundamental_discriminant = D;
    trace1 = 1;
    norm1 = (1 - D) / 4;
  } else {
    o.fundamental_discriminant = 4 * D;
    trace1 = 0;
    norm1 = -D;
  }
  o.discriminant = conductor * conductor * o.fundamental_discriminant;
  o.trace = conductor * trace1;
  o.norm = conductor * conductor * norm1;
  return o;
}

std::string to_string(const OrderElement& a) {
  return "(" + to_string(a.x) + ", " + to_string(a.y) + ")";
}

Int norm(const RealQuadraticOrder& o, const OrderElement& a) {
  return a.x * a.x + o.trace * a.x * a.y + o.norm * a.y * a.y;
}

Int trace(const RealQuadraticOrder& o, const OrderElement& a) {
  return 2 * a.x + o.trace * a.y;
}

OrderElement conjugate(const RealQuadraticOrder& o, const OrderElement& a) {
  return {a.x + o.trace * a.y, -a.y};
}

OrderElement add(const OrderElement& a, const OrderElement& b) { return {a.x + b.x, a.y + b.y}; }

OrderElement subtract(const OrderElement& a, const OrderElement& b) {
  return {a.x - b.x, a.y - b.y};
}

OrderElement multiply(const RealQuadraticOrder& o, const OrderElement& a, const OrderElement& b) {
  // w^2 = trace*w - norm
  return {a.x * b.x - o.norm * a.y * b.y, a.x * b.y + a.y * b.x + o.trace * a.y * b.y};
}

OrderElement power(const RealQuadraticOrder& o, OrderElement a, int exponent) {
  if (exponent < 0) {
    Int n = norm(o, a);
    if (abs(n) != 1) throw std::domain_error("negative power of a non-unit");
    a = conjugate(o, a);
    if (n < 0) a = {-a.x, -a.y};
    exponent = -exponent;
  }
  OrderElement result{1, 0};
  while (exponent > 0) {
    if (exponent & 1) result = multiply(o, result, a);
    a = multiply(o, a, a);
    exponent >>= 1;
  }
  return result;
}

std::optional<OrderElement> divide(const RealQuadraticOrder& o, const OrderElement& a,
                                   const OrderElement& b) {
  Int n = norm(o, b);
  if (n == 0) throw std::domain_error("division by zero element");
  OrderElement num = multiply(o, a, conjugate(o, b));
  if (num.x % n != 0 || num.y % n != 0) return std::nullopt;
  return OrderElement{num.x / n, num.y / n};
}

double real_value(const RealQuadraticOrder& o, const OrderElement& a, bool conjugate_embedding) {
  const double root = std::sqrt(o.discriminant.convert_to<double>());
  const double t = o.trace.convert_to<double>();
  const double omega = conjugate_embedding ? (t - root) / 2 : (t + root) / 2;
  return a.x.convert_to<double>() + a.y.convert_to<double>() * omega;
}

OrderElement to_maximal(const RealQuadraticOrder& o, const OrderElement& a) {
  return {a.x, a.y * o.conductor};
}

std::optional<OrderElement> from_maximal(const RealQuadraticOrder& o, const OrderElement& a) {
  if (a.y % o.conductor != 0) return std::nullopt;
  return OrderElement{a.x, a.y / o.conductor};
}

std::string to_string(SplittingType type) {
  switch (type) {
    case SplittingType::split: return "split";
    case SplittingType::inert: return "inert";
    case SplittingType::ramified: return "ramified";
    case SplittingType::divides_conductor: return "divides_conductor";
  }
  return "unknown";
}

SplittingType splitting_type(const RealQuadraticOrder& o, const Int& ell) {
  require_odd_prime(ell);
  if (o.conductor % ell == 0) return SplittingType::divides_conductor;
  Int d = mod_floor(o.fundamental_discriminant, ell);
  if (d == 0) return SplittingType::ramified;
  return pow_mod(d, (ell - 1) / 2, ell) == 1 ? SplittingType::split : SplittingType::inert;
}

OrderElement fundamental_unit(const RealQuadraticOrder& o) {
  const RealQuadraticOrder maximal = make_order(o.D, 1);
  // theta = -conj(w_1) = (P + sqrt(D)) / Q; convergents p/q of theta give
  // p + q*w_1 of small conjugate, and the first unit among them is fundamental.
  Int P = maximal.trace == 0 ? Int(0) : Int(-1);
  Int Q = maximal.trace == 0 ? Int(1) : Int(2);
  const Int s = isqrt(o.D);
  Int p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  OrderElement eps;
  while (true) {
    Int a = Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
    Int p = a * p_prev + p_prev2;
    Int q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    if (q > 0 && abs(norm(maximal, {p, q})) == 1) {
      eps = {p, q};
      break;
    }
    P = a * Q - P;
    Q = (o.D - P * P) / Q;
  }
  OrderElement unit = eps;
  while (unit.y % o.conductor != 0) unit = multiply(maximal, unit, eps);
  return *from_maximal(o, unit);
}

namespace {

// Every element of norm +-ell in `o` whose embeddings lie in [-bound, bound].
std::vector<OrderElement> norm_solutions_in_box(const RealQuadraticOrder& o, const Int& ell,
                                                double bound) {
  const double root = std::sqrt(o.discriminant.convert_to<double>());
  const double t = o.trace.convert_to<double>();
  const double w1 = (t + root) / 2, w2 = (t - root) / 2;
  // y = (s1 - s2) / sqrt(disc) with |s1|, |s2| <= bound.
  const auto y_max = static_cast<long long>(std::ceil(2 * bound / root)) + 1;
  std::vector<OrderElement> out;
  for (long long y = -y_max; y <= y_max; ++y) {
    const double yd = static_cast<double>(y);
    const double lo = std::max(-bound - yd * w1, -bound - yd * w2);
    const double hi = std::min(bound - yd * w1, bound - yd * w2);
    const auto x_lo = static_cast<long long>(std::floor(lo)) - 1;
    const auto x_hi = static_cast<long long>(std::ceil(hi)) + 1;
    for (long long x = x_lo; x <= x_hi; ++x) {
      OrderElement a{x, y};
      if (abs(norm(o, a)) == ell) out.push_back(a);
    }
  }
  return out;
}

bool is_unit_multiple(const RealQuadraticOrder& o, const OrderElement& a, const OrderElement& b) {
  auto q = divide(o, a, b);
  return q && abs(norm(o, *q)) == 1;
}

}  // namespace

std::optional<OrderElement> solve_norm(const RealQuadraticOrder& o, const Int& ell) {
  require_odd_prime(ell);
  if (o.conductor % ell == 0)
    throw std::invalid_argument("solve_norm: ell divides the conductor");
  // Associate classes are found in the maximal order, whose unit is small, and
  // lifted to Z[w_f] through the cosets eps1^k, 0 <= k < m, where eps_f = eps1^m.
  const RealQuadraticOrder maximal = make_order(o.D, 1);
  const OrderElement eps1 = fundamental_unit(maximal);
  const OrderElement eps_f = fundamental_unit(o);
  unsigned index = 1;
  for (OrderElement u = eps1; u != to_maximal(o, eps_f); u = multiply(maximal, u, eps1)) ++index;
  std::vector<OrderElement> classes;
  for (const auto& a : norm_solutions_in_box(
           maximal, ell, std::sqrt(ell.convert_to<double>() * real_value(maximal, eps1)))) {
    if (std::none_of(classes.begin(), classes.end(),
                     [&](const OrderElement& c) { return is_unit_multiple(maximal, a, c); }))
      classes.push_back(a);
  }

  auto key = [](const OrderElement& a) {
    return std::make_tuple(abs(a.y), abs(a.x), a.y < 0, a.x < 0);
  };
  std::optional<OrderElement> best;
  const double log_eps = std::log(real_value(o, eps_f));
  for (const auto& rep : classes) {
    OrderElement shifted = rep;
    for (unsigned k = 0; k < index; ++k, shifted = multiply(maximal, shifted, eps1)) {
      auto in_order = from_maximal(o, shifted);
      if (!in_order) continue;
      // Smallest coordinates sit where the two embeddings are balanced.
      const double v1 = std::abs(real_value(o, *in_order));
      const double v2 = std::abs(real_value(o, *in_order, true));
      const auto j0 = static_cast<int>(std::lround((std::log(v2) - std::log(v1)) / (2 * log_eps)));
      for (int j = j0 - 2; j <= j0 + 2; ++j) {
        const OrderElement c = multiply(o, *in_order, power(o, eps_f, j));
        for (const auto& cand : {c, OrderElement{-c.x, -c.y}})
          if (!best || key(cand) < key(*best)) best = cand;
      }
    }
  }
  return best;
}

std::optional<EllFactorization> factor_ell(const RealQuadraticOrder& o, const Int& ell) {
  auto first = solve_norm(o, ell);
  if (!first) return std::nullopt;
  auto second = divide(o, OrderElement{ell, 0}, *first);
  if (!second) throw std::logic_error("factor_ell: cofactor left the order");
  if (multiply(o, *first, *second) != OrderElement{ell, 0} || abs(norm(o, *second)) != ell)
    throw std::logic_error("factor_ell: factorization check failed");
  return EllFactorization{*first, *second};
}

bool are_associates_in_maximal(const RealQuadraticOrder& o, const OrderElement& a1,
                               const OrderElement& a2) {
  const RealQuadraticOrder maximal = make_order(o.D, 1);
  const OrderElement b1 = to_maximal(o, a1), b2 = to_maximal(o, a2);
  const Int n1 = norm(maximal, b1), n2 = norm(maximal, b2);
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("associates test on zero element");
  if (abs(n1) != abs(n2)) return false;
  auto q = divide(maximal, b1, b2);
  if (!q) return false;
  // q is integral with norm +-1, hence a unit; locate it as +-eps^k as a
  // second check.
  const OrderElement eps = fundamental_unit(maximal);
  const OrderElement minus_one{-1, 0};
  OrderElement u{1, 0};
  OrderElement v{1, 0};
  const OrderElement eps_inv = power(maximal, eps, -1);
  const Int size = abs(q->x) + abs(q->y);
  while (abs(u.x) + abs(u.y) <= 4 * size + 4) {
    for (const auto& c : {u, v})
      if (c == *q || multiply(maximal, c, minus_one) == *q) return true;
    u = multiply(maximal, u, eps);
    v = multiply(maximal, v, eps_inv);
  }
  throw std::logic_error("unit of norm +-1 not found among powers of the fundamental unit");
}

BezoutPair bezout_conductor(const OrderElement& a1, const OrderElement& a2,
                            const RealQuadraticOrder& o) {
  const OrderElement w{0, 1};
  const OrderElement wa1 = multiply(o, w, a1), wa2 = multiply(o, w, a2);
  const Matrix gens{{a1.x, wa1.x, a2.x, wa2.x}, {a1.y, wa1.y, a2.y, wa2.y}};
  auto sol = solve_in_lattice(gens, {o.conductor, 0});
  if (!sol)
    throw std::domain_error("conductor is not in the span of a1*R + a2*R (associate factors?)");
  // Admissible beta1 form the coset c + (projection of the kernel); scan
  // elements of increasing l1 size and keep the best admissible one.
  const OrderElement start{sol->coefficients[0], sol->coefficients[1]};
  const Int f = o.conductor;
  auto cofactor = [&](const OrderElement& b1) -> std::optional<OrderElement> {
    return divide(o, subtract(OrderElement{f, 0}, multiply(o, a1, b1)), a2);
  };
  std::optional<BezoutPair> best;
  auto better = [](const BezoutPair& a, const BezoutPair& b) {
    return std::make_tuple(l1(a.beta1), l1(a.beta2), a.beta1.x, a.beta1.y) <
           std::make_tuple(l1(b.beta1), l1(b.beta2), b.beta1.x, b.beta1.y);
  };
  const Int limit = l1(start);
  for (Int r = 0; r <= limit && !best; ++r) {
    for (Int x = -r; x <= r; ++x) {
      const Int rest = r - abs(x);
      for (const Int& y : {rest, Int(-rest)}) {
        OrderElement b1{x, y};
        if (auto b2 = cofactor(b1)) {
          BezoutPair cand{b1, *b2};
          if (!best || better(cand, *best)) best = cand;
        }
        if (rest == 0) break;
      }
    }
  }
  if (!best) throw std::logic_error("bezout_conductor: particular solution lost");
  const OrderElement total =
      add(multiply(o, a1, best->beta1), multiply(o, a2, best->beta2));
  if (total != OrderElement{f, 0}) throw std::logic_error("bezout_conductor: identity fails");
  return *best;
}

bool humbert_nonempty(const Int& discriminant, const Int& d) {
  const Int r = mod_floor(discriminant, 4);
  if (discriminant <= 0 || (r != 0 && r != 1))
    throw std::invalid_argument("discriminant must be positive and 0 or 1 mod 4");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  const Int modulus = 4 * d;
  const Int target = mod_floor(discriminant, modulus);
  for (Int x = 0; x < modulus; ++x)
    if (x * x % modulus == target) return true;
  return false;
}

}  // namespace rmlattice
