#pragma once

#include <stdexcept>
#include <string>

namespace quadring {

enum class errc {
    not_squarefree,
    degenerate_m,
    out_of_range,
    not_integral,
    field_mismatch,
    divisor_zero,
    not_divisible,
    both_zero,
    gcd_not_one,
    parity_unfixable,
    not_prime,
    no_square_root,
    not_reduced,
    xi_integral,
    divides_alpha,
    table_incomplete,
    table_mismatch,
    internal_contradiction,
    norm_mismatch,
    search_cap_exceeded,
    parse_error,
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace quadring
