#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "znsparse/bounds.hpp"
#include "znsparse/kernel.hpp"
#include "znsparse/recovery.hpp"

namespace znsparse {

enum class SamplingModel { bernoulli, fixed_size };

enum class CheckKind { condition_iv, condition_iii, nullspace_falsify, recovery };

std::string to_string(CheckKind kind);
std::string to_string(SamplingModel model);
std::optional<CheckKind> parse_check(const std::string& name);
std::optional<SamplingModel> parse_model(const std::string& name);

/// One Monte Carlo campaign: sample Ω per trial, evaluate the requested
/// checks, aggregate.
struct CampaignSpec {
    std::size_t n = 0;
    std::size_t t_sparsity = 1;
    double c = 2.0;
    std::uint32_t nu = 10;
    std::uint32_t mu = 10;
    double alpha = 2.0 / 3.0;
    SamplingModel model = SamplingModel::bernoulli;
    double tau = 0.0;             // 0 => tuned by the 4CT² log N rule
    std::size_t omega_size = 0;   // fixed-size model; 0 => ceil(τN)
    std::size_t trials = 2000;
    std::uint64_t seed = 0;
    std::vector<CheckKind> checks{CheckKind::condition_iv};
    std::size_t jobs = 0;         // 0 => hardware concurrency
    std::size_t falsifier_probes = 200;
    double recovery_tol = 1e-5;
};

struct TrialRecord {
    std::size_t index = 0;
    std::size_t omega_size = 0;
    bool iv_ran = false, iv_ok = false;
    double iv_ratio = 0.0;        // max|K| / (K0/2T)
    bool iii_ran = false, iii_ok = false;
    double on_margin = 0.0, off_margin = 0.0;
    bool ii_ran = false, ii_ok = false;
    double ii_slack = 0.0;
    bool recovery_ran = false, recovery_ok = false;
    double recovery_err = 0.0;
};

struct CheckSummary {
    CheckKind kind = CheckKind::condition_iv;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double frequency = 0.0;
    double wilson_lo = 0.0, wilson_hi = 1.0;
    double theory_lower_bound = 0.0;   // 1 - failure bound, when applicable
    bool theory_valid = false;         // bound nonvacuous and parameters admissible
    /// Set when the Wilson interval lies entirely below a nonvacuous
    /// theoretical lower bound: either the implementation or the stated
    /// bound is wrong, and the run must fail.
    bool inconsistent = false;
};

struct CampaignReport {
    CampaignSpec spec;
    double tau_used = 0.0;
    std::size_t omega_size_used = 0;   // fixed-size model only
    std::vector<TrialRecord> trials;
    std::vector<CheckSummary> summaries;
    bool interrupted = false;
    bool any_inconsistency = false;
    // Timing lives apart from the deterministic payload.
    double elapsed_seconds = 0.0;
    std::string started_at;

    const CheckSummary* summary(CheckKind kind) const;
};

/// 95% (by default) score interval for a binomial proportion.
struct WilsonInterval { double lo = 0.0, hi = 1.0; };
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = 1.959963984540054);

CampaignReport run_campaign(const CampaignSpec& spec,
                            const std::atomic<bool>* cancel = nullptr);

/// Exhaustive verification over all 2^N frequency sets for small N:
/// the cardinality floor for every coherence-passing set, and optionally
/// exact recovery on every support.
struct SmallNOptions {
    std::vector<std::size_t> n_values;   // each ≤ 13
    std::size_t t_max = 2;               // ≤ 2
    bool recovery = true;
    std::size_t amplitudes_per_support = 10;
    std::uint64_t seed = 0;
    double recovery_tol = 1e-5;
    // Iteration budget per solve; the sweep hits occasional slow instances
    // that need more room than the solver default.
    std::size_t recovery_max_iter = 20000;
    std::size_t jobs = 0;
};

struct SmallNViolation {
    std::string kind;        // "cardinality" or "recovery"
    std::size_t n = 0;
    std::uint64_t omega_mask = 0;
    std::size_t t = 0;
    std::uint64_t support_mask = 0;
    double detail = 0.0;     // |Ω| deficit or recovery error
};

struct SmallNCount {
    std::size_t n = 0;
    std::size_t t = 0;
    std::size_t sets_total = 0;       // nonempty subsets enumerated
    std::size_t sets_passing = 0;     // coherence condition holds
    std::size_t recovery_solves = 0;
};

struct SmallNReport {
    SmallNOptions options;
    std::vector<SmallNCount> counts;
    std::vector<SmallNViolation> violations;
    bool interrupted = false;
    double elapsed_seconds = 0.0;
    bool ok() const { return violations.empty() && !interrupted; }
};

SmallNReport verify_small_n(const SmallNOptions& opts,
                            const std::atomic<bool>* cancel = nullptr);

/// The pinned worked example: T=2, C=2, N=1001, ν=10. Reproduces the
/// tuning, the exponent, the failure bound, the cardinality floor, and a
/// Monte Carlo estimate of the success frequency side by side.
struct WorkedExampleReport {
    double tau_n = 0.0;            // 4CT² log N ≈ 221.08
    std::size_t budget = 0;        // ceil(τN) = 222
    double d = 0.0;                // ≈ 0.39995
    double failure_bound = 0.0;    // ν N^-d ≈ 0.631
    double success_lower = 0.0;    // ≈ 0.369
    std::size_t cardinality_floor = 0;  // 16
    CampaignReport campaign;       // fixed-size model, coherence check
};

WorkedExampleReport reproduce_worked_example(std::size_t trials = 2000, std::uint64_t seed = 0,
                                           std::size_t jobs = 0,
                                           const std::atomic<bool>* cancel = nullptr);

}  // namespace znsparse
