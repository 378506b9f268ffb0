#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rmlattice {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Floor division and the matching non-negative remainder (m > 0).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& m);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int abs(const Int& a);
Int isqrt(const Int& n);
Int pow(const Int& base, unsigned exponent);
Int pow_mod(Int base, Int exponent, const Int& modulus);

bool is_perfect_square(const Int& n);
bool is_prime(const Int& n);
bool is_squarefree(const Int& n);

/// Trial-division factorization of |n| into (prime, multiplicity), primes ascending.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

/// Largest k with p^k | n (n != 0).
unsigned valuation(Int n, const Int& p);

std::string to_string(const Int& n);
std::string to_string(const Rational& q);
std::int64_t to_int64(const Int& n);

}  // namespace rmlattice
