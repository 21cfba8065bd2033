#include "quadring/euclid.hpp"

#include <array>

#include "quadring/zarith.hpp"

#include "mpz_ll.hpp"

namespace quadring {

namespace {

mpz_class abs_norm(const QuadInt& x) {
    mpz_class n = x.norm();
    if (n < 0) n = -n;
    return n;
}

mpz_class weight(const QuadInt& x) {
    mpz_class w = abs(x.u()) + abs(x.v());
    return w;
}

// (weight asc, u desc, v desc): total order on an orbit; "v desc" settles the
// conjugate pair that survives equal weight and equal u.
bool preferred(const QuadInt& a, const QuadInt& b) {
    mpz_class wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    if (a.u() != b.u()) return a.u() > b.u();
    return a.v() > b.v();
}

// Fundamental unit of D_m itself. For m = 1 (mod 4) the Z[sqrt(m)] unit may
// be the cube of a half-integral unit; u^3 -+ 3u = 2X detects that exactly.
QuadInt fundamental_unit_order(const FieldParams& field) {
    FundUnit fz = fundamental_unit(field);
    if (!field.half_integral()) return fz.unit;
    mpz_class X = fz.unit.u() / 2;
    mpz_class two_x = 2 * X;
    mpz_class guess;
    mpz_root(guess.get_mpz_t(), two_x.get_mpz_t(), 3);
    for (mpz_class u = guess - 1; u <= guess + 2; ++u) {
        if (u < 1) continue;
        mpz_class lhs = u * u * u + (fz.norm_sign < 0 ? mpz_class(3 * u) : mpz_class(-3 * u));
        if (lhs != two_x) continue;
        mpz_class mv2 = u * u + (fz.norm_sign < 0 ? 4 : -4);
        if (mv2 <= 0 || !mpz_divisible_p(mv2.get_mpz_t(), ll2z(field.m).get_mpz_t()))
            continue;
        mpz_class v2 = mv2 / ll2z(field.m);
        if (!mpz_perfect_square_p(v2.get_mpz_t())) continue;
        mpz_class v;
        mpz_sqrt(v.get_mpz_t(), v2.get_mpz_t());
        if (v < 1) continue;
        if (mpz_odd_p(u.get_mpz_t()) != mpz_odd_p(v.get_mpz_t())) continue;
        return QuadInt::canon(u, v, field);
    }
    return fz.unit;
}

} // namespace

BezoutResult dh_gcd(const QuadInt& alpha, const QuadInt& beta, const PrimeTable& table) {
    if (alpha.is_zero() && beta.is_zero())
        fail(errc::both_zero, "gcd(0, 0) is undefined");
    const FieldParams& field = alpha.field();

    BezoutResult out;
    if (beta.is_zero()) {
        out.gcd = alpha;
        out.lambda = QuadInt::integer(1, field);
        out.mu = QuadInt::integer(0, field);
        return out;
    }
    if (alpha.is_zero()) {
        out.gcd = beta;
        out.lambda = QuadInt::integer(0, field);
        out.mu = QuadInt::integer(1, field);
        return out;
    }

    // g walks down the ideal (alpha, beta): replacing it with a descent
    // remainder keeps g = alpha*lg + beta*mg while |N(g)| strictly falls,
    // so the loop can only stop at a minimal-norm member, which divides
    // every element of the ideal and in particular both inputs.
    QuadInt g = beta;
    QuadInt lg = QuadInt::integer(0, field), mg = QuadInt::integer(1, field);
    if (abs_norm(alpha) < abs_norm(beta)) {
        g = alpha;
        lg = QuadInt::integer(1, field);
        mg = QuadInt::integer(0, field);
    }

    for (;;) {
        bool div_a = divides(g, alpha);
        if (div_a && divides(g, beta)) break;
        const QuadInt& x = div_a ? beta : alpha;
        StepResult st = dh_step(x, g, table);
        if (st.rho.is_zero() || abs_norm(st.rho) >= abs_norm(g))
            fail(errc::internal_contradiction, "descent stalled inside the gcd loop");
        QuadInt lr = div_a ? -(st.delta * lg) : st.gamma - st.delta * lg;
        QuadInt mr = div_a ? st.gamma - st.delta * mg : -(st.delta * mg);
        g = std::move(st.rho);
        lg = std::move(lr);
        mg = std::move(mr);
        ++out.chain_length;
    }
    out.gcd = std::move(g);
    out.lambda = std::move(lg);
    out.mu = std::move(mg);
    QuadInt check = alpha * out.lambda + beta * out.mu;
    if (!(check == out.gcd))
        fail(errc::internal_contradiction, "Bezout identity failed to close");
    return out;
}

QuadInt prime_element(const FieldParams& field, long long p, const PrimeTable& table) {
    if (!is_prime(p)) fail(errc::not_prime, "p must be prime");
    if (p == 2) fail(errc::out_of_range, "p must be an odd prime");
    if (kronecker(field.delta, p) == -1)
        fail(errc::no_square_root, "p is inert; no element has norm p");
    long long x = 0;
    if (field.m % p != 0) {
        auto root = sqrt_mod(ll2z(field.m), p);
        if (!root) fail(errc::no_square_root, "m has no square root mod p");
        x = *root;
    }
    BezoutResult g = dh_gcd(QuadInt::integer(ll2z(p), field),
                            QuadInt::from_ab(ll2z(x), -1, field), table);
    if (abs_norm(g.gcd) != ll2z(p))
        fail(errc::norm_mismatch, "gcd(p, x - sqrt(m)) missed norm p");
    return g.gcd;
}

QuadInt unit_reduce(const QuadInt& x) {
    if (x.is_zero()) return x;
    const FieldParams& field = x.field();

    std::vector<QuadInt> candidates;
    if (field.is_real()) {
        QuadInt eps = fundamental_unit_order(field);
        QuadInt inv = eps.norm() == 1 ? eps.conj() : -eps.conj();
        QuadInt cur = x;
        for (;;) {
            QuadInt up = cur * eps;
            QuadInt down = cur * inv;
            mpz_class wc = weight(cur), wu = weight(up), wd = weight(down);
            if (wd < wc && wd <= wu)
                cur = std::move(down);
            else if (wu < wc)
                cur = std::move(up);
            else
                break;
        }
        candidates = {cur * inv, cur, cur * eps};
    } else if (field.m == -1) {
        QuadInt i = QuadInt::from_ab(0, 1, field);
        candidates = {x, x * i};
    } else if (field.m == -3) {
        QuadInt omega = QuadInt::canon(1, 1, field);
        candidates = {x, x * omega, x * omega * omega};
    } else {
        candidates = {x};
    }

    QuadInt best = candidates.front();
    for (const QuadInt& c : candidates) {
        for (const QuadInt& y : {c, -c}) {
            if (preferred(y, best)) best = y;
        }
    }
    return best;
}

} // namespace quadring
