#pragma once

#include <cstdint>

#include "znsparse/signal.hpp"

namespace znsparse {

/// Observed spectrum values on Ω, aligned with omega.members().
struct RecoveryProblem {
    std::size_t n = 0;
    FrequencySet omega;
    std::vector<cxd> observed;
};

/// Restrict dft(x) to Ω.
RecoveryProblem make_problem(const CyclicSignal& x, const FrequencySet& omega);

struct SolveOptions {
    double tol = 1e-9;            // feasibility + successive-change stop
    std::size_t max_iter = 20000;
};

struct RecoveryResult {
    CyclicSignal solution;        // time-domain minimizer y
    double l1_norm = 0.0;         // Σ_t |y(t)|
    std::size_t iterations = 0;
    double residual = 0.0;        // max_{ω∈Ω} |ŷ(ω) - observed(ω)|
    bool converged = false;
    /// Subgradient certificate at exit: a function with spectrum on Ω,
    /// equal to the phase of y on its support and of modulus ≤ 1
    /// elsewhere when the solve has converged. Diagnostic only.
    CyclicSignal dual;
};

/// Basis pursuit: minimize Σ_t |y(t)| subject to ŷ|_Ω = observed.
/// Douglas-Rachford splitting alternating complex soft-thresholding with
/// the exact projection onto the affine constraint set (overwrite the Ω
/// entries of the spectrum, transform back). Deterministic.
RecoveryResult minimal_extrapolation(const RecoveryProblem& problem,
                                     const SolveOptions& opts = {});

struct ExactRecoveryResult {
    bool exact = false;
    double error_linf = 0.0;      // ‖y - x‖_∞
    RecoveryResult solve;
};

/// Forms the problem from dft(x)|_Ω, solves it, and compares with x.
ExactRecoveryResult check_exact_recovery(const CyclicSignal& x, const FrequencySet& omega,
                                         double tol = 1e-5, const SolveOptions& opts = {});

enum class NullspaceVerdict {
    vacuously_true,       // Ω = Z_N, null space is {0}
    no_violation_found,
    violated,
};

struct NullspaceReport {
    NullspaceVerdict verdict = NullspaceVerdict::no_violation_found;
    /// min over probes of (Σ_{t∉S}|z| - Σ_{t∈S}|z|) / ‖z‖₁; ≤ 0 iff violated.
    double min_slack = 1.0;
    CyclicSignal worst;   // probe attaining min_slack
    std::size_t probes = 0;
};

/// Randomized falsifier for the null-space condition: samples nonzero z
/// with ẑ|_Ω = 0 and checks Σ_{t∉S}|z| > Σ_{t∈S}|z|. Probes the projections
/// of the unit impulses on S onto the null space first, then `trials`
/// random spectra on the complement of Ω. Can disprove the condition,
/// never prove it.
NullspaceReport nullspace_falsifier(const FrequencySet& omega, const SupportSet& support,
                                    std::size_t trials, std::uint64_t seed);

}  // namespace znsparse
