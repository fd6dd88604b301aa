#pragma once

// Rational points on diagonal ternary quadrics a x^2 + b y^2 + c z^2 = 0.
// Used to find complex structures whose square is a quadratic form.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nilqp::conic {

/// Prime factorisation of |n|, n != 0. Empty optional when a cofactor
/// resists Pollard rho within its iteration cap.
std::optional<std::vector<std::pair<mpz_class, unsigned>>> factor(const mpz_class& n);

/// n = f * s^2 with f squarefree and carrying the sign of n.
std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(const mpz_class& n);

/// Some t with t^2 = a (mod m) for squarefree m > 0, or nothing.
std::optional<mpz_class> sqrt_mod(const mpz_class& a, const mpz_class& m);

/// A nontrivial rational zero of a x^2 + b y^2 + c z^2 for nonzero integers.
/// Nothing when the quadric has no rational point or factoring gives up.
std::optional<std::array<mpq_class, 3>> ternary_zero(const mpz_class& a, const mpz_class& b,
                                                     const mpz_class& c);

}  // namespace nilqp::conic
