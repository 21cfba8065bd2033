#pragma once

#include "quadring/dhstep.hpp"
#include "quadring/normsolve.hpp"
#include "quadring/quadint.hpp"

namespace quadring {

/// gcd = alpha*lambda + beta*mu; chain_length counts descent steps taken.
struct BezoutResult {
    QuadInt gcd, lambda, mu;
    long long chain_length = 0;
};

/// Greatest common divisor by repeated descent steps, with Bezout
/// coefficients tracked forward. gcd(alpha, 0) = alpha; both zero errors.
BezoutResult dh_gcd(const QuadInt& alpha, const QuadInt& beta, const PrimeTable& table);

/// Generator of a prime ideal over odd p with kronecker(delta, p) != -1,
/// as gcd(p, x - sqrt(m)) for x^2 = m (mod p). Asserts |N| = p.
QuadInt prime_element(const FieldParams& field, long long p, const PrimeTable& table);

/// Canonical associate: minimal |u| + |v| over unit multiples,
/// ties broken toward larger u, then v > 0.
QuadInt unit_reduce(const QuadInt& x);

} // namespace quadring
