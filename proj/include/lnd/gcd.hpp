#pragma once

#include <optional>

#include "lnd/poly.hpp"

namespace lnd {

// Exact quotient p/q, or nullopt when q does not divide p. q must be nonzero.
std::optional<Poly> try_divide(const Poly& p, const Poly& q);

// Greatest common divisor, normalized to graded-lex leading coefficient 1.
// gcd(p, 0) = monic p; gcd(0, 0) = 0. Primitive-part/content recursion with
// a subresultant polynomial remainder sequence in the main variable.
Poly poly_gcd(const Poly& p, const Poly& q);

// True iff d divides f^N for some N >= 0 (d nonzero). Used for cylinder
// denominator checks.
bool divides_power(const Poly& d, const Poly& f);

}  // namespace lnd
