#include "quadring/field.hpp"

#include <cmath>

namespace quadring {

namespace {

constexpr long long kMaxAbsM = 1'000'000'000'000'000LL;

long long long_mod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

bool is_square_ll(long long n) {
    if (n < 0) return false;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

} // namespace

bool is_squarefree(long long m) {
    unsigned long long n = m < 0 ? -static_cast<unsigned long long>(m) : m;
    if (n == 0) return false;
    if (n % 4 == 0) return false;
    while (n % 2 == 0) n /= 2;
    for (unsigned long long p = 3; p * p * p <= n; p += 2) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    // Remaining cofactor is 1 or has at most two prime factors; square iff p^2.
    return n == 1 || !is_square_ll(static_cast<long long>(n));
}

FieldParams field_params(long long m) {
    if (m == 0 || m == 1) fail(errc::degenerate_m, "m must not be 0 or 1");
    if (m > kMaxAbsM || m < -kMaxAbsM)
        fail(errc::out_of_range, "|m| exceeds the supported range");
    if (!is_squarefree(m)) fail(errc::not_squarefree, "m must be squarefree");

    FieldParams f;
    f.m = m;
    f.ring_class = long_mod(m, 4) == 1 ? RingClass::one_mod4 : RingClass::two_three_mod4;
    f.delta = f.ring_class == RingClass::one_mod4 ? m : 4 * m;
    f.sign = m > 0 ? FieldSign::real : FieldSign::imaginary;
    return f;
}

bool gauss_bound_holds(const FieldParams& field, long long p) {
    if (p < 1) fail(errc::out_of_range, "p must be positive");
    __int128 lhs = static_cast<__int128>(p) * p;
    if (field.sign == FieldSign::real) return 5 * lhs <= field.delta;
    return 3 * lhs <= -static_cast<__int128>(field.delta);
}

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::not_squarefree: return "NotSquarefree";
        case errc::degenerate_m: return "DegenerateM";
        case errc::out_of_range: return "OutOfRange";
        case errc::not_integral: return "NotIntegral";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::divisor_zero: return "DivisorZero";
        case errc::not_divisible: return "NotDivisible";
        case errc::both_zero: return "BothZero";
        case errc::gcd_not_one: return "GcdNotOne";
        case errc::parity_unfixable: return "ParityUnfixable";
        case errc::not_prime: return "NotPrime";
        case errc::no_square_root: return "NoSquareRoot";
        case errc::not_reduced: return "NotReduced";
        case errc::xi_integral: return "XiIntegral";
        case errc::divides_alpha: return "DividesAlpha";
        case errc::table_incomplete: return "TableIncomplete";
        case errc::table_mismatch: return "TableMismatch";
        case errc::internal_contradiction: return "InternalContradiction";
        case errc::norm_mismatch: return "NormMismatch";
        case errc::search_cap_exceeded: return "SearchCapExceeded";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace quadring
