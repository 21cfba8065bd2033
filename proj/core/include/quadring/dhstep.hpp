#pragma once

#include <vector>

#include "quadring/normsolve.hpp"
#include "quadring/quadint.hpp"

namespace quadring {

enum class StepCase {
    lemma1_split,
    lemma1_c4_5mod8,
    lemma1_c4_1mod8,
    lemma2,
    lemma3,
    c2_ramified,
    case1_split,
    case2_ramified,
};

/// Stable tag string for a case ("Lemma1Split", "Lemma2", ...).
const char* step_case_name(StepCase c) noexcept;

/// One descent step: rho = alpha*gamma - beta*delta with 0 < |N(rho)| < |N(beta)|.
struct StepResult {
    QuadInt gamma, delta, rho;
    std::vector<StepCase> trace;
};

/// gamma, delta with 0 < |N(xi*gamma - delta)| < 1 for non-integral xi,
/// plus the case trace taken.
struct XiSolution {
    QuadInt gamma, delta;
    std::vector<StepCase> trace;
};

XiSolution solve_xi(const XiForm& xi, const PrimeTable& table);

/// Requires beta != 0 and beta not dividing alpha (divides_alpha otherwise).
/// Table branches for missing witnesses raise table_incomplete.
StepResult dh_step(const QuadInt& alpha, const QuadInt& beta, const PrimeTable& table);

/// Recomputes rho and both norm inequalities from scratch.
bool verify_step(const QuadInt& alpha, const QuadInt& beta, const StepResult& step);

} // namespace quadring
