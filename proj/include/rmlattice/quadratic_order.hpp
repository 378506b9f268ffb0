#pragma once

#include <optional>
#include <string>

#include "rmlattice/integer.hpp"

namespace rmlattice {

/// The order Z[w_f] of conductor f in Q(sqrt D), where w_f = f * w_1 and
/// w_1 = sqrt(D) for D = 2, 3 mod 4, w_1 = (1 + sqrt(D)) / 2 for D = 1 mod 4.
///
/// w_f has minimal polynomial x^2 - trace*x + norm, whose discriminant is
/// f^2 * d_F. Because w_f = (f/g) * w_g for g | f, the generator of a
/// smaller-conductor order is an exact rational multiple of this one.
struct RealQuadraticOrder {
  Int D;
  Int conductor;
  Int fundamental_discriminant;
  Int discriminant;
  Int trace;
  Int norm;

  bool operator==(const RealQuadraticOrder&) const = default;
};

/// Throws std::invalid_argument unless D >= 2 is squarefree and f >= 1.
RealQuadraticOrder make_order(const Int& D, const Int& conductor);

/// x + y * w_f in a fixed order.
struct OrderElement {
  Int x;
  Int y;

  bool operator==(const OrderElement&) const = default;
};

std::string to_string(const OrderElement& a);

Int norm(const RealQuadraticOrder& order, const OrderElement& a);
Int trace(const RealQuadraticOrder& order, const OrderElement& a);
OrderElement conjugate(const RealQuadraticOrder& order, const OrderElement& a);
OrderElement add(const OrderElement& a, const OrderElement& b);
OrderElement subtract(const OrderElement& a, const OrderElement& b);
OrderElement multiply(const RealQuadraticOrder& order, const OrderElement& a,
                      const OrderElement& b);
OrderElement power(const RealQuadraticOrder& order, OrderElement a, int exponent);

/// a / b when the quotient lies in the order.
std::optional<OrderElement> divide(const RealQuadraticOrder& order, const OrderElement& a,
                                   const OrderElement& b);

/// Real embedding value; `conjugate_embedding` selects sqrt(D) -> -sqrt(D).
double real_value(const RealQuadraticOrder& order, const OrderElement& a,
                  bool conjugate_embedding = false);

/// Coordinates of `a` in the maximal order, and back (if it lies in `order`).
OrderElement to_maximal(const RealQuadraticOrder& order, const OrderElement& a);
std::optional<OrderElement> from_maximal(const RealQuadraticOrder& order, const OrderElement& a);

enum class SplittingType { split, inert, ramified, divides_conductor };

std::string to_string(SplittingType type);

/// Behaviour of an odd prime in the field, or divides_conductor when ell | f.
SplittingType splitting_type(const RealQuadraticOrder& order, const Int& ell);

/// The unit eps > 1 generating the unit group of `order` modulo +-1. Found from
/// the continued fraction of -conj(w_1) for the maximal order, then raised to
/// the least power lying in the order.
OrderElement fundamental_unit(const RealQuadraticOrder& order);

/// An element of norm +-ell, or nullopt if none exists. Associate classes in
/// the maximal order are enumerated completely (each has a representative with
/// both embeddings in [-sqrt(ell*eps1), sqrt(ell*eps1)]) and lifted to the
/// order through the finitely many cosets of its unit group. Returns the
/// element with the smallest (|y|, |x|), preferring y >= 0 and then x >= 0.
std::optional<OrderElement> solve_norm(const RealQuadraticOrder& order, const Int& ell);

struct EllFactorization {
  OrderElement first;   // canonical solve_norm output
  OrderElement second;  // ell / first
};

/// ell = first * second with |norm| = ell for both, when ell is reducible.
std::optional<EllFactorization> factor_ell(const RealQuadraticOrder& order, const Int& ell);

/// Whether a1 / a2 is a unit of the maximal order. Elements are given in the
/// coordinates of `order`.
bool are_associates_in_maximal(const RealQuadraticOrder& order, const OrderElement& a1,
                               const OrderElement& a2);

struct BezoutPair {
  OrderElement beta1;
  OrderElement beta2;
};

/// beta1, beta2 with f = a1*beta1 + a2*beta2. Solvability is decided by
/// Hermite normal form on the lattice spanned by a1, w*a1, a2, w*a2; the
/// returned pair minimises (|beta1|_1, |beta2|_1) then lexicographic order of
/// coordinates. Throws std::domain_error when f is not in the span.
BezoutPair bezout_conductor(const OrderElement& a1, const OrderElement& a2,
                            const RealQuadraticOrder& order);

/// Whether some x in [0, 4d) has x^2 = disc mod 4d.
bool humbert_nonempty(const Int& discriminant, const Int& d);

}  // namespace rmlattice
