#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadring/field.hpp"
#include "quadring/quadint.hpp"

namespace quadring {

struct SearchLimits {
    /// Upper bound on the v-range of the real norm-equation search.
    /// Exceeding it raises search_cap_exceeded rather than answering "none".
    long long v_cap = 50'000'000;
};

/// Some pi with |N(pi)| = p, or nullopt when no such element exists.
/// Deterministic: smallest v, then smallest u >= 0, norm +p preferred on ties.
std::optional<QuadInt> solve_norm_abs(const FieldParams& field, long long p,
                                      const SearchLimits& limits = {});

/// Witness elements pi_p, |N(pi_p)| = p, for every required prime:
/// p <= mu(m) with kronecker(delta, p) != -1, plus p = 2 when m = 1 (mod 8).
struct PrimeTable {
    FieldParams field;
    std::vector<long long> required;       // ascending
    std::map<long long, QuadInt> entries;  // subset of required that has witnesses

    bool complete() const { return entries.size() == required.size(); }
    std::optional<long long> first_missing() const;
    const QuadInt* find(long long p) const;
};

PrimeTable build_prime_table(const FieldParams& field, const SearchLimits& limits = {});

std::string to_json(const PrimeTable& table);
PrimeTable prime_table_from_json(const std::string& text);

} // namespace quadring
