#include "quadring/dhstep.hpp"

#include "quadring/zarith.hpp"

#include "mpz_ll.hpp"

namespace quadring {

namespace {

// 5c^2 <= delta (real) resp. 3c^2 <= -delta (imaginary), exact at any size.
bool within_gauss(const FieldParams& field, const mpz_class& c) {
    mpz_class lhs = (field.is_real() ? 5 : 3) * c * c;
    mpz_class rhs = ll2z(field.is_real() ? field.delta : -field.delta);
    return lhs <= rhs;
}

// Smallest odd prime factor, or nullopt when c is a power of two.
std::optional<mpz_class> smallest_odd_factor(const mpz_class& c) {
    mpz_class odd = c;
    unsigned long twos = mpz_scan1(odd.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
    if (odd == 1) return std::nullopt;
    for (mpz_class d = 3; d * d <= odd; d += 2)
        if (mpz_divisible_p(odd.get_mpz_t(), d.get_mpz_t())) return d;
    return odd;
}

mpz_class smallest_factor(const mpz_class& c) {
    if (mpz_even_p(c.get_mpz_t())) return 2;
    auto q = smallest_odd_factor(c);
    return q ? *q : c;
}

long long mod8(long long n) { return ((n % 8) + 8) % 8; }

const QuadInt& table_entry(const PrimeTable& table, long long p, long long delta) {
    if (const QuadInt* pi = table.find(p)) return *pi;
    if (kronecker(delta, p) == -1)
        fail(errc::internal_contradiction, "descent reached an inert prime");
    fail(errc::table_incomplete,
         "no norm witness for p = " + std::to_string(p) + " in the table");
}

struct XiState {
    mpz_class a, b, c;
    FieldParams field;

    QuadInt numerator() const { return QuadInt::from_ab(a, b, field); }
    mpz_class norm_ab() const { return a * a - ll2z(field.m) * b * b; }
    bool both_odd() const {
        return mpz_odd_p(a.get_mpz_t()) && mpz_odd_p(b.get_mpz_t());
    }
};

// Lemma 2: r = S - c*q ranges over a fixed class mod step*c; every r with
// 0 < |r^2 - m| inside the window gives |N(xi*gamma - delta)| < 1, and the
// Gauss bound guarantees at least one. Pick the best deterministically.
struct Lemma2Pick {
    mpz_class r;
    bool found = false;
};

Lemma2Pick pick_r(const mpz_class& base, const mpz_class& modulus, const mpz_class& m,
                  const mpz_class& window) {
    // Valid r satisfy r^2 < m + window, hence |r| <= R.
    mpz_class limit = m + window;
    mpz_class R = 0;
    if (limit > 0) {
        mpz_sqrt(R.get_mpz_t(), limit.get_mpz_t());
        ++R;
    }
    mpz_class start;
    mpz_class lo = -R;
    mpz_fdiv_r(start.get_mpz_t(), mpz_class(base - lo).get_mpz_t(), modulus.get_mpz_t());
    start = lo + start;
    Lemma2Pick best;
    mpz_class best_key;
    for (mpz_class r = start; r <= R; r += modulus) {
        mpz_class key = r * r - m;
        if (key < 0) key = -key;
        if (key == 0 || key >= window) continue;
        mpz_class abs_r = r < 0 ? mpz_class(-r) : r;
        bool better = !best.found || key < best_key ||
                      (key == best_key && abs_r < (best.r < 0 ? -best.r : best.r)) ||
                      (key == best_key && abs_r == (best.r < 0 ? -best.r : best.r) && r > best.r);
        if (better) {
            best.r = r;
            best_key = key;
            best.found = true;
        }
    }
    return best;
}

XiSolution finish(QuadInt gamma, QuadInt delta, std::vector<StepCase> trace) {
    return XiSolution{std::move(gamma), std::move(delta), std::move(trace)};
}

XiSolution xi_lemma2(const XiState& st, std::vector<StepCase> trace) {
    trace.push_back(StepCase::lemma2);
    const FieldParams& field = st.field;
    bool half = field.half_integral();
    Egcd3 w = half ? egcd3_parity(st.a, st.b, st.c, field) : egcd3(st.a, st.b, st.c);

    mpz_class S = st.a * w.e + ll2z(field.m) * st.b * w.d;
    mpz_class step = half ? 2 : 1;
    mpz_class modulus = step * st.c;
    mpz_class base = half ? mpz_class(S - st.c * w.f) : S;
    mpz_class window = step * step * st.c * st.c;
    Lemma2Pick pick = pick_r(base, modulus, ll2z(field.m), window);
    if (!pick.found)
        fail(errc::internal_contradiction, "no residue fits the norm window");
    mpz_class q = (S - pick.r) / st.c;

    // Canonical witness: shift (e, f, q) along k*(c, -b, a) until e lands in
    // [c, c + step*c). Leaves xi*gamma - delta untouched.
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), mpz_class(st.c - w.e).get_mpz_t(),
               mpz_class(step * st.c).get_mpz_t());
    mpz_class k = step * t;
    w.e += k * st.c;
    w.f -= k * st.b;
    q += k * st.a;

    QuadInt gamma = half ? QuadInt::canon(w.e, w.d, field) : QuadInt::from_ab(w.e, w.d, field);
    QuadInt delta = half ? QuadInt::canon(q, -w.f, field) : QuadInt::from_ab(q, -w.f, field);
    return finish(std::move(gamma), std::move(delta), std::move(trace));
}

XiSolution xi_lemma3(const XiState& st, std::vector<StepCase> trace) {
    trace.push_back(StepCase::lemma3);
    mpz_class n = st.norm_ab();
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), st.c.get_mpz_t());
    if (2 * r > st.c) r -= st.c;
    mpz_class q = (n - r) / st.c;
    QuadInt gamma = QuadInt::from_ab(st.a, -st.b, st.field);
    QuadInt delta = QuadInt::integer(q, st.field);
    return finish(std::move(gamma), std::move(delta), std::move(trace));
}

XiSolution xi_c2_ramified(const XiState& st, const PrimeTable& table,
                          std::vector<StepCase> trace) {
    trace.push_back(StepCase::c2_ramified);
    const QuadInt& pi = table_entry(table, 2, st.field.delta);
    mpz_class x = pi.u() / 2, y = pi.v() / 2;
    mpz_class du = st.a - x, dv = st.b - y;
    if (mpz_odd_p(du.get_mpz_t()) || mpz_odd_p(dv.get_mpz_t()))
        fail(errc::internal_contradiction, "ramified-2 witness parity is off");
    QuadInt gamma = QuadInt::integer(1, st.field);
    QuadInt delta = QuadInt::from_ab(du / 2, dv / 2, st.field);
    return finish(std::move(gamma), std::move(delta), std::move(trace));
}

XiSolution xi_case1_split(const XiState& st, const PrimeTable& table,
                          std::vector<StepCase> trace) {
    trace.push_back(StepCase::case1_split);
    long long p = st.c.get_si();
    QuadInt pi = table_entry(table, p, st.field.delta);
    // Align signs so that u_pi/(2a) = v_pi/(2b) (mod p); exactly one of
    // pi, conj(pi) fits because p divides neither v_pi nor a.
    mpz_class mismatch = pi.u() * st.b - pi.v() * st.a;
    if (!mpz_divisible_p(mismatch.get_mpz_t(), st.c.get_mpz_t())) {
        pi = pi.conj();
        mismatch = pi.u() * st.b - pi.v() * st.a;
        if (!mpz_divisible_p(mismatch.get_mpz_t(), st.c.get_mpz_t()))
            fail(errc::internal_contradiction, "no sign of pi matches the class");
    }
    mpz_class inv2a, two_a = 2 * st.a;
    if (!mpz_invert(inv2a.get_mpz_t(), two_a.get_mpz_t(), st.c.get_mpz_t()))
        fail(errc::internal_contradiction, "2a is not invertible mod p");
    mpz_class z;
    mpz_fdiv_r(z.get_mpz_t(), mpz_class(pi.u() * inv2a).get_mpz_t(), st.c.get_mpz_t());
    QuadInt gamma = QuadInt::integer(z, st.field);
    QuadInt delta = exact_div(st.numerator() * z - pi, QuadInt::integer(st.c, st.field));
    return finish(std::move(gamma), std::move(delta), std::move(trace));
}

XiSolution xi_case2_ramified(const XiState& st, const PrimeTable& table,
                             std::vector<StepCase> trace) {
    trace.push_back(StepCase::case2_ramified);
    long long p = st.c.get_si();
    const QuadInt& pi = table_entry(table, p, st.field.delta);
    mpz_class n_prime = st.norm_ab() / st.c;
    Egcd2 bez = egcd2(n_prime, st.c);
    if (bez.g != 1)
        fail(errc::internal_contradiction, "norm/p shares a factor with p");
    QuadInt theta = exact_div(QuadInt::from_ab(st.a, -st.b, st.field), pi);
    QuadInt gamma = theta * bez.s;
    // xi*gamma = (1 - p*t)/pi = 1/pi - eps*t*conj(pi), eps the sign of N(pi).
    mpz_class eps(pi.norm() > 0 ? 1 : -1);
    QuadInt delta = -(pi.conj() * mpz_class(eps * bez.t));
    return finish(std::move(gamma), std::move(delta), std::move(trace));
}

} // namespace

const char* step_case_name(StepCase c) noexcept {
    switch (c) {
        case StepCase::lemma1_split: return "Lemma1Split";
        case StepCase::lemma1_c4_5mod8: return "Lemma1C4_5mod8";
        case StepCase::lemma1_c4_1mod8: return "Lemma1C4_1mod8";
        case StepCase::lemma2: return "Lemma2";
        case StepCase::lemma3: return "Lemma3";
        case StepCase::c2_ramified: return "C2Ramified";
        case StepCase::case1_split: return "CaseISplit";
        case StepCase::case2_ramified: return "CaseIIRamified";
    }
    return "?";
}

XiSolution solve_xi(const XiForm& xi, const PrimeTable& table) {
    if (!(xi.field == table.field))
        fail(errc::field_mismatch, "xi and table disagree on the field");
    if (xi.c < 1) fail(errc::not_reduced, "xi denominator must be positive");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), xi.a.get_mpz_t(), xi.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi.c.get_mpz_t());
    if (g != 1) fail(errc::not_reduced, "xi is not in lowest terms");
    if (xi.integral()) fail(errc::xi_integral, "xi already lies in the ring");

    XiState st{xi.a, xi.b, xi.c, xi.field};
    std::vector<StepCase> trace;
    QuadInt peel = QuadInt::integer(1, st.field);
    bool peeled = false;

    for (;;) {
        if (!is_prime(st.c)) {
            bool two_unusable = st.field.half_integral() && st.both_odd();
            if (!two_unusable) {
                mpz_class q = smallest_factor(st.c);
                peel *= mpz_class(st.c / q);
                peeled = true;
                st.c = q;
                trace.push_back(StepCase::lemma1_split);
                continue;
            }
            if (auto q = smallest_odd_factor(st.c)) {
                peel *= mpz_class(st.c / *q);
                peeled = true;
                st.c = *q;
                trace.push_back(StepCase::lemma1_split);
                continue;
            }
            // c = 2^k with both coordinates odd: reduce to the c = 4 specials.
            if (st.c != 4) {
                peel *= mpz_class(st.c / 4);
                peeled = true;
                st.c = 4;
                trace.push_back(StepCase::lemma1_split);
            }
            XiSolution sol;
            if (mod8(st.field.m) == 5) {
                trace.push_back(StepCase::lemma1_c4_5mod8);
                mpz_class k = (st.norm_ab() - 4) / 8;
                sol = finish(QuadInt::canon(st.a, -st.b, st.field),
                             QuadInt::integer(k, st.field), std::move(trace));
            } else {
                trace.push_back(StepCase::lemma1_c4_1mod8);
                const QuadInt& pi = table_entry(table, 2, st.field.delta);
                QuadInt cand = pi;
                bool ok = false;
                for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
                    switch (attempt) {
                        case 0: cand = pi; break;
                        case 1: cand = -pi; break;
                        case 2: cand = pi.conj(); break;
                        case 3: cand = -pi.conj(); break;
                    }
                    mpz_class diff = (st.a - cand.u()) - (st.b - cand.v());
                    ok = mpz_divisible_2exp_p(diff.get_mpz_t(), 2);
                }
                if (!ok) fail(errc::internal_contradiction, "no associate fits mod 4");
                sol = finish(QuadInt::integer(1, st.field),
                             QuadInt::canon((st.a - cand.u()) / 2, (st.b - cand.v()) / 2,
                                            st.field),
                             std::move(trace));
            }
            if (peeled) sol.gamma = peel * sol.gamma;
            return sol;
        }

        XiSolution sol;
        if (!within_gauss(st.field, st.c)) {
            sol = xi_lemma2(st, std::move(trace));
        } else if (!mpz_divisible_p(st.norm_ab().get_mpz_t(), st.c.get_mpz_t())) {
            sol = xi_lemma3(st, std::move(trace));
        } else if (st.c == 2) {
            sol = xi_c2_ramified(st, table, std::move(trace));
        } else if (mpz_divisible_p(ll2z(st.field.m).get_mpz_t(), st.c.get_mpz_t())) {
            sol = xi_case2_ramified(st, table, std::move(trace));
        } else {
            sol = xi_case1_split(st, table, std::move(trace));
        }
        if (peeled) sol.gamma = peel * sol.gamma;
        return sol;
    }
}

StepResult dh_step(const QuadInt& alpha, const QuadInt& beta, const PrimeTable& table) {
    if (beta.is_zero()) fail(errc::divisor_zero, "step with beta = 0");
    XiForm xi = xi_reduce(alpha, beta);
    if (xi.integral()) fail(errc::divides_alpha, "beta divides alpha; gcd is beta");
    XiSolution sol = solve_xi(xi, table);
    QuadInt rho = alpha * sol.gamma - beta * sol.delta;
    StepResult out{std::move(sol.gamma), std::move(sol.delta), std::move(rho),
                   std::move(sol.trace)};
    mpz_class nr = out.rho.norm();
    if (nr < 0) nr = -nr;
    mpz_class nb = beta.norm();
    if (nb < 0) nb = -nb;
    if (nr == 0 || nr >= nb)
        fail(errc::internal_contradiction, "descent step failed to shrink the norm");
    return out;
}

bool verify_step(const QuadInt& alpha, const QuadInt& beta, const StepResult& step) {
    if (beta.is_zero()) return false;
    QuadInt rho = alpha * step.gamma - beta * step.delta;
    if (!(rho == step.rho)) return false;
    mpz_class nr = rho.norm();
    if (nr < 0) nr = -nr;
    mpz_class nb = beta.norm();
    if (nb < 0) nb = -nb;
    return nr > 0 && nr < nb;
}

} // namespace quadring
