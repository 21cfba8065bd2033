#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadring/normsolve.hpp"

namespace quadring {

enum class CertStatus { certified_pid, inconclusive };
enum class CorollaryPath { imaginary_all_inert, general_table };

const char* cert_status_name(CertStatus s) noexcept;
const char* corollary_path_name(CorollaryPath p) noexcept;

/// CertifiedPID is sound: a complete witness table proves D_m is a PID.
/// Inconclusive reports the smallest required prime without a witness.
struct Certificate {
    FieldParams field;
    CertStatus status = CertStatus::inconclusive;
    CorollaryPath corollary_path = CorollaryPath::general_table;
    PrimeTable witness_table;
    std::optional<long long> failing_prime;
};

Certificate pid_certify(long long m, const SearchLimits& limits = {});

/// Certificates for every squarefree m in [lo, hi] except 0 and 1, ascending.
/// jobs > 1 processes distinct m concurrently; output order is unchanged.
std::vector<Certificate> certify_range(long long lo, long long hi,
                                       const SearchLimits& limits = {}, int jobs = 1);

std::string to_json(const Certificate& cert);

} // namespace quadring
