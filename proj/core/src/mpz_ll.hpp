#pragma once

#include <gmpxx.h>

namespace quadring {

// gmpxx defines mixed-operand overloads only up to long; long long is a
// distinct type on LP64 and makes every mixed expression ambiguous.
static_assert(sizeof(long) == sizeof(long long), "64-bit long required");

inline mpz_class ll2z(long long x) { return mpz_class(static_cast<long>(x)); }

}  // namespace quadring
