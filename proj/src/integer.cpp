#include "rmlattice/integer.hpp"

#include <limits>
#include <stdexcept>

namespace rmlattice {

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

Int pow(const Int& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Int pow_mod(Int base, Int exponent, const Int& modulus) {
  Int result = 1;
  base = mod_floor(base, modulus);
  while (exponent > 0) {
    if ((exponent & 1) != 0) result = result * base % modulus;
    base = base * base % modulus;
    exponent >>= 1;
  }
  return mod_floor(result, modulus);
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  std::vector<std::pair<Int, unsigned>> out;
  Int m = abs(n);
  for (Int p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

unsigned valuation(Int n, const Int& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::string to_string(const Int& n) { return n.str(); }

std::string to_string(const Rational& q) {
  return to_string(boost::multiprecision::numerator(q)) + "/" +
         to_string(boost::multiprecision::denominator(q));
}

std::int64_t to_int64(const Int& n) {
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + n.str());
  return n.convert_to<std::int64_t>();
}

}  // namespace rmlattice
