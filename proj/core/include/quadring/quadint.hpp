#pragma once

#include <gmpxx.h>

#include "quadring/field.hpp"

namespace quadring {

/// Element (u + v*sqrt(m))/2 of the maximal order D_m.
/// Parity invariant: u = v (mod 2) when m = 1 (mod 4), u and v both even otherwise.
class QuadInt {
public:
    QuadInt() = default;

    /// Validates the parity invariant; throws not_integral when (u,v) is no element.
    static QuadInt canon(mpz_class u, mpz_class v, const FieldParams& field);

    /// a + b*sqrt(m), always integral.
    static QuadInt from_ab(const mpz_class& a, const mpz_class& b, const FieldParams& field);

    static QuadInt integer(const mpz_class& n, const FieldParams& field);

    const mpz_class& u() const noexcept { return u_; }
    const mpz_class& v() const noexcept { return v_; }
    const FieldParams& field() const noexcept { return field_; }

    bool is_zero() const noexcept { return u_ == 0 && v_ == 0; }
    bool is_rational() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return u_ == 2 && v_ == 0; }

    QuadInt conj() const;
    mpz_class norm() const;

    QuadInt operator-() const;
    QuadInt& operator+=(const QuadInt& rhs);
    QuadInt& operator-=(const QuadInt& rhs);
    QuadInt& operator*=(const QuadInt& rhs);
    QuadInt& operator*=(const mpz_class& k);

    friend QuadInt operator+(QuadInt a, const QuadInt& b) { return a += b; }
    friend QuadInt operator-(QuadInt a, const QuadInt& b) { return a -= b; }
    friend QuadInt operator*(QuadInt a, const QuadInt& b) { return a *= b; }
    friend QuadInt operator*(QuadInt a, const mpz_class& k) { return a *= k; }
    friend QuadInt operator*(const mpz_class& k, QuadInt a) { return a *= k; }

    friend bool operator==(const QuadInt& a, const QuadInt& b) {
        return a.field_ == b.field_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

    /// x^k for k >= 0 by binary exponentiation.
    QuadInt pow(unsigned long k) const;

private:
    QuadInt(mpz_class u, mpz_class v, const FieldParams& field)
        : u_(std::move(u)), v_(std::move(v)), field_(field) {}

    mpz_class u_, v_;
    FieldParams field_;
};

/// True iff b | a in D_m. b = 0 is a contract error.
bool divides(const QuadInt& b, const QuadInt& a);

/// a / b when b | a; throws not_divisible otherwise.
QuadInt exact_div(const QuadInt& a, const QuadInt& b);

/// alpha/beta as (a + b*sqrt(m))/c with integer a, b, gcd(a,b,c) = 1, c >= 1.
struct XiForm {
    mpz_class a, b, c;
    FieldParams field;

    /// True iff the value lies in D_m (c = 1, or the half-integral c = 2 case).
    bool integral() const;
};

XiForm xi_reduce(const QuadInt& alpha, const QuadInt& beta);

} // namespace quadring
