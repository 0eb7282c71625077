#pragma once

#include <cstddef>
#include <cstdint>

namespace znsparse {

/// Scalar parameters of the probability bounds. nu drives the arc
/// discretization a = cos(π/ν); mu and alpha appear only in the
/// two-term tail bound for a fixed support.
struct BoundParams {
    double n = 0.0;               // group order N (real-valued in the formulas)
    std::size_t t_sparsity = 1;   // T
    double c = 0.0;               // C
    std::uint32_t nu = 0;         // ν > 1 (> 3 for the T2 chain)
    std::uint32_t mu = 0;         // μ > 1
    double alpha = 0.0;           // α in (0,1)

    double a() const;             // cos(π/ν)
    double alpha_prime() const;   // α - 2 sin(π/(2μ))
};

/// τ = 4CT² log(N) / N (natural log). Rejects τ ≥ 1.
double tune_tau_t2(double n, std::size_t t_sparsity, double c);

/// τ = 4CT log(N) / N.
double tune_tau_t3(double n, std::size_t t_sparsity, double c);

/// d = C(a² - a⁴/T²) - 1 with a = cos(π/ν). Requires ν > 3.
double exponent_d(const BoundParams& params);

/// A probability bound together with its unclamped value.
struct BoundValue {
    double value = 0.0;   // clamped to [0,1]
    double raw = 0.0;
    bool clamped = false;
};

/// Upper bound on 1 - P(coherence condition):
/// Nν exp(τN(-a²/4T² + a⁴/4T⁴)), clamped to 1. The derivation needs
/// 2t ≠ 0 and 3t ≠ 0, i.e. N ≡ ±1 (mod 6); pass allow_any_n to evaluate
/// the formula anyway.
BoundValue bound_t2_failure(const BoundParams& params, double tau, bool allow_any_n = false);

/// Minimal admissible failure probability for a fixed support of size T:
/// Tμ^T ν N^(-Ca²α′²) + (N-T)μ^T ν N^(-Ca²(1-α)²), clamped to 1.
/// Requires α′ = α - 2 sin(π/2μ) > 0.
BoundValue bound_t3_failure(const BoundParams& params);

/// Supremum of exponents δ with failure probability O(N^(-δ)) under the
/// τN = 4CT log N rule: (C-1)²/(4C). Requires C > 1.
double corollary_t3_delta_max(double c);

/// Reference sample budget floor(22(1+δ) T log N) of the uniform-model
/// recovery theorem, for side-by-side comparison.
std::size_t crt_reference_size(double n, std::size_t t_sparsity, double delta);

bool is_pm1_mod6(std::size_t n);

}  // namespace znsparse
