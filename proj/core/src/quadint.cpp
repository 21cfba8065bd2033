#include "quadring/quadint.hpp"

#include "mpz_ll.hpp"

namespace quadring {

namespace {

bool same_parity(const mpz_class& a, const mpz_class& b) {
    return mpz_tstbit(a.get_mpz_t(), 0) == mpz_tstbit(b.get_mpz_t(), 0);
}

bool coords_valid(const mpz_class& u, const mpz_class& v, const FieldParams& field) {
    if (field.half_integral()) return same_parity(u, v);
    return mpz_even_p(u.get_mpz_t()) && mpz_even_p(v.get_mpz_t());
}

void require_same_field(const FieldParams& a, const FieldParams& b) {
    if (!(a == b)) fail(errc::field_mismatch, "operands belong to different fields");
}

} // namespace

QuadInt QuadInt::canon(mpz_class u, mpz_class v, const FieldParams& field) {
    if (!coords_valid(u, v, field))
        fail(errc::not_integral, "(u + v*sqrt(m))/2 violates the parity invariant");
    return QuadInt(std::move(u), std::move(v), field);
}

QuadInt QuadInt::from_ab(const mpz_class& a, const mpz_class& b, const FieldParams& field) {
    return QuadInt(2 * a, 2 * b, field);
}

QuadInt QuadInt::integer(const mpz_class& n, const FieldParams& field) {
    return QuadInt(2 * n, 0, field);
}

QuadInt QuadInt::conj() const { return QuadInt(u_, -v_, field_); }

mpz_class QuadInt::norm() const {
    mpz_class n = u_ * u_ - ll2z(field_.m) * v_ * v_;
    // Divisible by 4 whenever the parity invariant holds.
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), n.get_mpz_t(), 2);
    return q;
}

QuadInt QuadInt::operator-() const { return QuadInt(-u_, -v_, field_); }

QuadInt& QuadInt::operator+=(const QuadInt& rhs) {
    require_same_field(field_, rhs.field_);
    u_ += rhs.u_;
    v_ += rhs.v_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& rhs) {
    require_same_field(field_, rhs.field_);
    u_ -= rhs.u_;
    v_ -= rhs.v_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& rhs) {
    require_same_field(field_, rhs.field_);
    mpz_class nu = u_ * rhs.u_ + ll2z(field_.m) * v_ * rhs.v_;
    mpz_class nv = u_ * rhs.v_ + rhs.u_ * v_;
    // Both halves exact: the order is closed under multiplication.
    mpz_fdiv_q_2exp(nu.get_mpz_t(), nu.get_mpz_t(), 1);
    mpz_fdiv_q_2exp(nv.get_mpz_t(), nv.get_mpz_t(), 1);
    u_ = std::move(nu);
    v_ = std::move(nv);
    return *this;
}

QuadInt& QuadInt::operator*=(const mpz_class& k) {
    u_ *= k;
    v_ *= k;
    return *this;
}

QuadInt QuadInt::pow(unsigned long k) const {
    QuadInt base = *this;
    QuadInt acc = QuadInt::integer(1, field_);
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

bool divides(const QuadInt& b, const QuadInt& a) {
    if (b.is_zero()) fail(errc::divisor_zero, "division by zero element");
    require_same_field(a.field(), b.field());
    QuadInt num = a * b.conj();
    mpz_class d = b.norm();
    if (!mpz_divisible_p(num.u().get_mpz_t(), d.get_mpz_t())) return false;
    if (!mpz_divisible_p(num.v().get_mpz_t(), d.get_mpz_t())) return false;
    mpz_class qu = num.u() / d;
    mpz_class qv = num.v() / d;
    return coords_valid(qu, qv, a.field());
}

QuadInt exact_div(const QuadInt& a, const QuadInt& b) {
    if (b.is_zero()) fail(errc::divisor_zero, "division by zero element");
    require_same_field(a.field(), b.field());
    QuadInt num = a * b.conj();
    mpz_class d = b.norm();
    if (!mpz_divisible_p(num.u().get_mpz_t(), d.get_mpz_t()) ||
        !mpz_divisible_p(num.v().get_mpz_t(), d.get_mpz_t()))
        fail(errc::not_divisible, "quotient is not integral");
    return QuadInt::canon(num.u() / d, num.v() / d, a.field());
}

bool XiForm::integral() const {
    if (c == 1) return true;
    if (c != 2) return false;
    return field.half_integral() && same_parity(a, b);
}

XiForm xi_reduce(const QuadInt& alpha, const QuadInt& beta) {
    if (beta.is_zero()) fail(errc::divisor_zero, "xi_reduce with zero denominator");
    require_same_field(alpha.field(), beta.field());

    QuadInt num = alpha * beta.conj();
    XiForm xi;
    xi.field = alpha.field();
    xi.a = num.u();
    xi.b = num.v();
    xi.c = 2 * beta.norm();
    if (xi.c < 0) {
        xi.a = -xi.a;
        xi.b = -xi.b;
        xi.c = -xi.c;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), xi.a.get_mpz_t(), xi.b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi.c.get_mpz_t());
    xi.a /= g;
    xi.b /= g;
    xi.c /= g;
    return xi;
}

} // namespace quadring
