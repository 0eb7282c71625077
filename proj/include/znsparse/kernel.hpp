#pragma once

#include "znsparse/signal.hpp"

namespace znsparse {

/// The idempotent attached to a frequency set Ω:
/// K(t) = Σ_{ω∈Ω} e(ωt/N). Its spectrum is the 0/1 indicator of Ω.
/// max_off_origin is cached so the coherence test below is O(1).
struct IdempotentKernel {
    FrequencySet omega;
    std::vector<cxd> values;         // K(0..N-1)
    double k0 = 0.0;                 // K(0) = |Ω|
    double max_off_origin = 0.0;     // max_{t≠0} |K(t)|, 0 when N == 1
    std::size_t argmax_off_origin = 0;

    std::size_t n() const { return values.size(); }
};

IdempotentKernel kernel(const FrequencySet& omega);

/// Outcome of the coherence test |K(t)| < K(0)/(2T) for all t ≠ 0.
/// Values within a 1e-12 relative band of the threshold are flagged as
/// boundary and count as failures (the inequality must hold strictly).
struct ConditionIVResult {
    bool holds = false;
    bool boundary = false;
    double threshold = 0.0;       // K(0)/(2T)
    double max_off_origin = 0.0;
    std::size_t witness = 0;      // violating t when !holds and one exists
    bool has_witness = false;
};

ConditionIVResult check_condition_iv(const IdempotentKernel& k, std::size_t t_sparsity);

/// 4T²N/(N+4T²-1): every Ω passing the coherence test for sparsity T has
/// at least ceil of this many elements.
double cardinality_lower_bound(std::size_t n, std::size_t t_sparsity);

/// Interpolating function p(t) = Σ_{t'∈S} λ(t') K(t-t')/K(0), together with
/// its two margins. Spectrum of p is contained in Ω by construction.
struct Certificate {
    CyclicSignal p;
    SupportSet support;
    std::vector<cxd> lambda;      // aligned with support.members()
    double on_margin = 0.0;       // max_{t∈S} |p(t) - λ(t)|
    double off_margin = 0.0;      // max_{t∉S} |p(t)|, 0 when S = Z_N
};

/// Requires K(0) > 0 and |λ| = 1 on S (within 1e-12).
Certificate build_certificate(const IdempotentKernel& k, const SupportSet& support,
                              const std::vector<cxd>& lambda);

/// True iff on_margin < 1/2 and off_margin < 1/2, strictly.
bool check_condition_iii(const Certificate& cert);

}  // namespace znsparse
