#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "quadring/field.hpp"
#include "quadring/quadint.hpp"

namespace quadring {

/// a*s + b*t = g, g = gcd(a,b) >= 0.
struct Egcd2 {
    mpz_class g, s, t;
};

/// a*d + b*e + c*f = 1; only defined when gcd(a,b,c) = 1.
struct Egcd3 {
    mpz_class d, e, f;
};

Egcd2 egcd2(const mpz_class& a, const mpz_class& b);

/// Deterministic composition egcd2(egcd2(a,b).g, c). Throws gcd_not_one.
Egcd3 egcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c);

/// egcd3 witness with d = e (mod 2), required by the half-integral rings.
/// Adjustments: odd c uses (e+c, f-b); c = 2 uses (b+d, e-a).
/// Throws parity_unfixable when no witness satisfies the congruence.
Egcd3 egcd3_parity(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                   const FieldParams& field);

/// Kronecker symbol (delta/p) for prime p. At p = 2: 0 for even delta,
/// +1 for delta = +-1 (mod 8), -1 for delta = +-3 (mod 8).
int kronecker(long long delta, long long p);

/// Smallest square root of n modulo an odd prime p, or nullopt when n is a
/// non-residue. Deterministic Tonelli-Shanks (smallest non-residue auxiliary).
std::optional<long long> sqrt_mod(const mpz_class& n, long long p);

bool is_prime(long long n);
bool is_prime(const mpz_class& n);

/// Primes p with gauss_bound_holds(field, p), ascending.
std::vector<long long> primes_upto(const FieldParams& field);

/// Continued fraction of sqrt(m) for squarefree m > 1: a0 followed by the
/// minimal period (which ends with 2*a0).
struct CfExpansion {
    long long a0 = 0;
    std::vector<long long> period;
};

CfExpansion cfrac_sqrt(long long m);

/// Fundamental unit x + y*sqrt(m) > 1 of Z[sqrt(m)] with |x^2 - m y^2| = 1,
/// from the end-of-period convergent; norm_sign = x^2 - m y^2.
struct FundUnit {
    QuadInt unit;
    int norm_sign = 1;
};

FundUnit fundamental_unit(const FieldParams& field);

} // namespace quadring
