// Dense univariate polynomials over a field context: the support layer for
// extension-field arithmetic, cyclotomic polynomials, irreducibility tests,
// quadratic root finding and resultants.
#pragma once

#include <optional>
#include <utility>

#include "skewlines/field.hpp"

namespace skewlines::poly {

// Coefficients low degree first; normalized form has no trailing zeros and
// the zero polynomial is the empty vector. Every coefficient shares one ctx.
using Poly = std::vector<Fel>;

Poly normalize(Poly f);
int deg(const Poly& f);  // -1 for the zero polynomial
bool is_zero(const Poly& f);
Poly from_ints(const FieldCtxPtr& ctx, const std::vector<long>& cs);
Poly constant(const Fel& c);
Poly x_power(const FieldCtxPtr& ctx, int n);  // x^n

Poly add(const Poly& f, const Poly& g);
Poly sub(const Poly& f, const Poly& g);
Poly neg(const Poly& f);
Poly mul(const Poly& f, const Poly& g);
Poly scale(const Fel& c, const Poly& f);
// Quotient and remainder; g != 0 with invertible leading coefficient.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
// Exact division; throws if the remainder is nonzero.
Poly div_exact(const Poly& f, const Poly& g);
Poly mod(const Poly& f, const Poly& g);
Poly monic(const Poly& f);
Poly gcd_monic(Poly f, Poly g);
// g, s, t with g = gcd (monic) and s*f + t*h = g.
struct Egcd { Poly g, s, t; };
Egcd extended_gcd(Poly f, Poly h);
Poly powmod(Poly base, mpz_class e, const Poly& modulus);
Fel eval(const Poly& f, const Fel& x);
Poly derivative(const Poly& f);

// Irreducibility over GF(p) (or an extension of it) of degree d, by the
// Frobenius criterion: x^(q^d) = x mod f and gcd(x^(q^(d/r)) - x, f) = 1 for
// every prime r | d, where q is the field size.
bool irreducible_over_finite(const Poly& f);

// Roots of a degree <= 2 polynomial inside its own field. Quadratics use
// square roots (odd characteristic), Frobenius square roots and the
// Artin-Schreier half-trace (char 2); empty when no root lies in the field.
std::vector<Fel> roots_deg2(const Poly& f);

// Square root in the element's field when one exists (Tonelli-Shanks in odd
// characteristic finite fields, Frobenius in char 2, exact num/den square
// roots over Q).
std::optional<Fel> sqrt_in_field(const Fel& a);

// The m-th cyclotomic polynomial over the given rationals context, by
// recursive exact division of x^m - 1 by Phi_d over the proper divisors d.
Poly cyclotomic(long m, const FieldCtxPtr& rationals_ctx);

// Some deterministically chosen irreducible monic polynomial of degree d
// over a finite field (sequential search).
Poly find_irreducible(const FieldCtxPtr& finite_ctx, int d);

}  // namespace skewlines::poly
