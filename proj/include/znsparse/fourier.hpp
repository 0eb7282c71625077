#pragma once

#include "znsparse/signal.hpp"

namespace znsparse {

/// Table of the N-th roots of unity e(k/N) = exp(2πik/N), k = 0..N-1.
/// Shared by the transforms, the kernel sum and the recovery solver.
class RootTable {
public:
    explicit RootTable(std::size_t n);

    std::size_t n() const { return roots_.size(); }

    /// e(k/N) for k already in [0, N).
    cxd root(std::size_t k) const { return roots_[k]; }

    /// e(k/N) for arbitrary integer k.
    cxd at(std::int64_t k) const { return roots_[mod_reduce(k, n())]; }

private:
    std::vector<cxd> roots_;
};

/// Forward transform, unitary normalization:
/// x̂(ω) = (1/√N) Σ_t x(t) e(-ωt/N). Direct O(N²) summation.
CyclicSignal dft(const CyclicSignal& x);

/// Inverse transform: x(t) = (1/√N) Σ_ω x̂(ω) e(ωt/N).
CyclicSignal idft(const CyclicSignal& xhat);

/// Spectrum restricted to Ω, in member order: (dft x)(ω) for ω ∈ Ω.
/// Costs O(|Ω|·N) instead of O(N²).
std::vector<cxd> restricted_dft(const CyclicSignal& x, const FrequencySet& omega,
                                const RootTable& table);

/// Adjoint of restricted_dft: y(t) = (1/√N) Σ_{ω∈Ω} c(ω) e(ωt/N).
CyclicSignal restricted_idft(const std::vector<cxd>& coeffs, const FrequencySet& omega,
                             const RootTable& table);

}  // namespace znsparse
