#include "quadring/zarith.hpp"

#include <algorithm>
#include <cmath>

#include "mpz_ll.hpp"

namespace quadring {

namespace {

long long isqrt_ll(long long n) {
    if (n <= 0) return 0;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

} // namespace

Egcd2 egcd2(const mpz_class& a, const mpz_class& b) {
    Egcd2 r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return r;
}

Egcd3 egcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
    Egcd2 ab = egcd2(a, b);
    Egcd2 gc = egcd2(ab.g, c);
    if (gc.g != 1) fail(errc::gcd_not_one, "gcd(a, b, c) exceeds 1");
    return Egcd3{gc.s * ab.s, gc.s * ab.t, gc.t};
}

Egcd3 egcd3_parity(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                   const FieldParams& field) {
    Egcd3 w = egcd3(a, b, c);
    if (!field.half_integral()) return w;
    mpz_class diff = w.d - w.e;
    if (mpz_even_p(diff.get_mpz_t())) return w;
    if (mpz_odd_p(c.get_mpz_t())) {
        w.e += c;
        w.f -= b;
        return w;
    }
    // (d+b, e-a, f) keeps the identity for every c; flips d-e only when a+b is odd.
    w.d += b;
    w.e -= a;
    diff = w.d - w.e;
    if (mpz_even_p(diff.get_mpz_t())) return w;
    fail(errc::parity_unfixable, "no witness with d = e (mod 2) exists");
}

int kronecker(long long delta, long long p) {
    mpz_class d = ll2z(delta);
    return mpz_kronecker_si(d.get_mpz_t(), p);
}

std::optional<long long> sqrt_mod(const mpz_class& n, long long p) {
    if (!is_prime(p)) fail(errc::not_prime, "modulus must be prime");
    mpz_class P = ll2z(p);
    mpz_class a = n % P;
    if (a < 0) a += P;
    if (a == 0) return 0;
    if (p == 2) return 1;
    if (mpz_legendre(a.get_mpz_t(), P.get_mpz_t()) == -1) return std::nullopt;

    mpz_class r;
    if (p % 4 == 3) {
        r = powm(a, (P + 1) / 4, P);
    } else {
        // Tonelli-Shanks, made deterministic by the smallest non-residue.
        mpz_class q = P - 1;
        unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
        mpz_class z = 2;
        while (mpz_legendre(z.get_mpz_t(), P.get_mpz_t()) != -1) ++z;
        mpz_class c = powm(z, q, P);
        mpz_class t = powm(a, q, P);
        r = powm(a, (q + 1) / 2, P);
        unsigned long lev = s;
        while (t != 1) {
            mpz_class tt = t;
            unsigned long i = 0;
            while (tt != 1) {
                tt = tt * tt % P;
                ++i;
            }
            mpz_class b = c;
            for (unsigned long j = 0; j + i + 1 < lev; ++j) b = b * b % P;
            lev = i;
            c = b * b % P;
            t = t * c % P;
            r = r * b % P;
        }
    }
    long long root = mpz_get_si(r.get_mpz_t());
    return std::min(root, p - root);
}

bool is_prime(long long n) {
    if (n < 2) return false;
    mpz_class z = ll2z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<long long> primes_upto(const FieldParams& field) {
    long long bound = field.is_real() ? field.delta / 5 : (-field.delta) / 3;
    long long cap = isqrt_ll(bound) + 2;
    while (cap >= 1 && !gauss_bound_holds(field, cap)) --cap;
    std::vector<long long> out;
    if (cap < 2) return out;
    std::vector<bool> composite(static_cast<size_t>(cap) + 1, false);
    for (long long i = 2; i * i <= cap; ++i)
        if (!composite[static_cast<size_t>(i)])
            for (long long j = i * i; j <= cap; j += i) composite[static_cast<size_t>(j)] = true;
    for (long long p = 2; p <= cap; ++p)
        if (!composite[static_cast<size_t>(p)]) out.push_back(p);
    return out;
}

CfExpansion cfrac_sqrt(long long m) {
    if (m <= 1) fail(errc::out_of_range, "continued fraction needs m > 1");
    if (!is_squarefree(m)) fail(errc::not_squarefree, "m has a square factor");
    CfExpansion cf;
    cf.a0 = isqrt_ll(m);
    long long P = 0, Q = 1, a = cf.a0;
    for (;;) {
        P = a * Q - P;
        Q = (m - P * P) / Q;
        a = (cf.a0 + P) / Q;
        cf.period.push_back(a);
        if (Q == 1) break;
    }
    return cf;
}

FundUnit fundamental_unit(const FieldParams& field) {
    if (!field.is_real()) fail(errc::out_of_range, "imaginary fields have no fundamental unit");
    CfExpansion cf = cfrac_sqrt(field.m);
    // Convergent just before the period closes.
    mpz_class h1 = ll2z(cf.a0), h0 = 1;
    mpz_class k1 = 1, k0 = 0;
    for (size_t j = 0; j + 1 < cf.period.size(); ++j) {
        mpz_class a = ll2z(cf.period[j]);
        mpz_class h = a * h1 + h0;
        mpz_class k = a * k1 + k0;
        h0 = std::move(h1);
        h1 = std::move(h);
        k0 = std::move(k1);
        k1 = std::move(k);
    }
    mpz_class n = h1 * h1 - ll2z(field.m) * k1 * k1;
    if (n != 1 && n != -1)
        fail(errc::internal_contradiction, "end-of-period convergent is not a unit");
    FundUnit fu{QuadInt::from_ab(h1, k1, field), n == 1 ? 1 : -1};
    return fu;
}

} // namespace quadring
