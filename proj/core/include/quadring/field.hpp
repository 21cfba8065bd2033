#pragma once

#include "quadring/errors.hpp"

namespace quadring {

enum class RingClass { one_mod4, two_three_mod4 };
enum class FieldSign { real, imaginary };

/// Shared parameters of the maximal order of Q(sqrt(m)).
/// delta = m when m = 1 (mod 4), else 4m.
struct FieldParams {
    long long m = 0;
    long long delta = 0;
    RingClass ring_class = RingClass::two_three_mod4;
    FieldSign sign = FieldSign::real;

    bool half_integral() const noexcept { return ring_class == RingClass::one_mod4; }
    bool is_real() const noexcept { return sign == FieldSign::real; }

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

/// Validates m (squarefree, not 0 or 1) and derives the field parameters.
FieldParams field_params(long long m);

/// Exact form of p <= mu(m), mu = sqrt(delta/5) for real fields and
/// sqrt(-delta/3) for imaginary ones: 5p^2 <= delta resp. 3p^2 <= -delta.
bool gauss_bound_holds(const FieldParams& field, long long p);

bool is_squarefree(long long m);

} // namespace quadring
