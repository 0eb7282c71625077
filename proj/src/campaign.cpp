#include "znsparse/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <stdexcept>
#include <thread>

#include "znsparse/sampling.hpp"

namespace znsparse {

std::string to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::condition_iv: return "iv";
        case CheckKind::condition_iii: return "iii";
        case CheckKind::nullspace_falsify: return "ii-falsify";
        case CheckKind::recovery: return "recovery";
    }
    return "?";
}

std::string to_string(SamplingModel model) {
    return model == SamplingModel::bernoulli ? "bernoulli" : "fixed-size";
}

std::optional<CheckKind> parse_check(const std::string& name) {
    if (name == "iv") return CheckKind::condition_iv;
    if (name == "iii") return CheckKind::condition_iii;
    if (name == "ii-falsify" || name == "ii") return CheckKind::nullspace_falsify;
    if (name == "recovery") return CheckKind::recovery;
    return std::nullopt;
}

std::optional<SamplingModel> parse_model(const std::string& name) {
    if (name == "bernoulli") return SamplingModel::bernoulli;
    if (name == "fixed-size" || name == "fixed_size") return SamplingModel::fixed_size;
    return std::nullopt;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

const CheckSummary* CampaignReport::summary(CheckKind kind) const {
    for (const CheckSummary& s : summaries)
        if (s.kind == kind) return &s;
    return nullptr;
}

namespace {

std::size_t resolve_jobs(std::size_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t mix_ids(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t state = seed;
    splitmix64(state);
    state ^= a;
    splitmix64(state);
    state ^= b;
    splitmix64(state);
    state ^= c;
    return splitmix64(state);
}

bool wants(const CampaignSpec& spec, CheckKind kind) {
    return std::find(spec.checks.begin(), spec.checks.end(), kind) != spec.checks.end();
}

// Smallest integer count implied by a real-valued floor, with a guard
// against float noise at integer crossings.
std::size_t ceil_count(double value) {
    return static_cast<std::size_t>(std::ceil(value - 1e-9));
}

TrialRecord run_trial(const CampaignSpec& spec, double tau, std::size_t omega_size,
                      std::size_t index) {
    auto rng = make_stream(spec.seed, index);
    const std::uint64_t omega_seed = rng();
    FrequencySet omega = spec.model == SamplingModel::bernoulli
                             ? sample_omega(BernoulliConfig{spec.n, tau, omega_seed})
                             : sample_omega_fixed_size(spec.n, omega_size, omega_seed);

    TrialRecord rec;
    rec.index = index;
    rec.omega_size = omega.cardinality();

    IdempotentKernel k;
    const bool need_kernel =
        wants(spec, CheckKind::condition_iv) || wants(spec, CheckKind::condition_iii);
    if (need_kernel) k = kernel(omega);

    if (wants(spec, CheckKind::condition_iv)) {
        rec.iv_ran = true;
        auto iv = check_condition_iv(k, spec.t_sparsity);
        rec.iv_ok = iv.holds;
        rec.iv_ratio = iv.threshold > 0.0 ? iv.max_off_origin / iv.threshold : -1.0;
    }
    if (wants(spec, CheckKind::condition_iii)) {
        rec.iii_ran = true;
        SupportSet support = sample_support(spec.n, spec.t_sparsity, rng);
        auto lambda = sample_unimodular(support.cardinality(), rng);
        if (k.k0 > 0.0) {
            Certificate cert = build_certificate(k, support, lambda);
            rec.iii_ok = check_condition_iii(cert);
            rec.on_margin = cert.on_margin;
            rec.off_margin = cert.off_margin;
        } else {
            rec.iii_ok = false;
            rec.on_margin = rec.off_margin = -1.0;
        }
    }
    if (wants(spec, CheckKind::nullspace_falsify)) {
        rec.ii_ran = true;
        SupportSet support = sample_support(spec.n, spec.t_sparsity, rng);
        auto report = nullspace_falsifier(omega, support, spec.falsifier_probes, rng());
        rec.ii_ok = report.verdict != NullspaceVerdict::violated;
        rec.ii_slack =
            report.verdict == NullspaceVerdict::vacuously_true ? 1.0 : report.min_slack;
    }
    if (wants(spec, CheckKind::recovery)) {
        rec.recovery_ran = true;
        SupportSet support = sample_support(spec.n, spec.t_sparsity, rng);
        auto amps = sample_amplitudes(support.cardinality(), rng);
        CyclicSignal x(spec.n);
        for (std::size_t i = 0; i < support.cardinality(); ++i) x[support.members()[i]] = amps[i];
        if (!omega.empty()) {
            auto res = check_exact_recovery(x, omega, spec.recovery_tol);
            rec.recovery_ok = res.exact;
            rec.recovery_err = res.error_linf;
        } else {
            rec.recovery_ok = false;
            rec.recovery_err = -1.0;
        }
    }
    return rec;
}

}  // namespace

CampaignReport run_campaign(const CampaignSpec& spec, const std::atomic<bool>* cancel) {
    if (spec.n == 0) throw std::invalid_argument("run_campaign: group order must be positive");
    if (spec.trials == 0) throw std::invalid_argument("run_campaign: need trials >= 1");
    if (spec.checks.empty()) throw std::invalid_argument("run_campaign: checks must be nonempty");
    if (spec.t_sparsity == 0 || spec.t_sparsity > spec.n)
        throw std::invalid_argument("run_campaign: need 1 <= T <= N");
    if (spec.tau < 0.0 || spec.tau >= 1.0)
        throw std::invalid_argument("run_campaign: explicit tau must lie in [0,1)");

    const auto t_start = std::chrono::steady_clock::now();
    CampaignReport report;
    report.spec = spec;
    report.started_at = utc_timestamp();

    double tau = spec.tau;
    if (tau == 0.0) {
        if (spec.model == SamplingModel::bernoulli || spec.omega_size == 0) {
            tau = tune_tau_t2(static_cast<double>(spec.n), spec.t_sparsity, spec.c);
        } else {
            // The budget is explicit, so the tuned rate is only wanted for
            // the theory comparison; an untunable rate is not an error then.
            try {
                tau = tune_tau_t2(static_cast<double>(spec.n), spec.t_sparsity, spec.c);
            } catch (const std::invalid_argument&) {
                tau = 0.0;
            }
        }
    }
    report.tau_used = tau;
    std::size_t omega_size = 0;
    if (spec.model == SamplingModel::fixed_size) {
        omega_size = spec.omega_size > 0 ? spec.omega_size
                                         : ceil_count(tau * static_cast<double>(spec.n));
        if (omega_size > spec.n)
            throw std::invalid_argument("run_campaign: omega budget exceeds group order");
        report.omega_size_used = omega_size;
    }

    std::vector<TrialRecord> records(spec.trials);
    std::vector<std::uint8_t> done(spec.trials, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            if (cancel && cancel->load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.trials) return;
            records[i] = run_trial(spec, tau, omega_size, i);
            done[i] = 1;
        }
    };
    const std::size_t jobs = std::min(resolve_jobs(spec.jobs), spec.trials);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < spec.trials; ++i)
        if (done[i]) report.trials.push_back(records[i]);
    report.interrupted = report.trials.size() < spec.trials;

    // Theoretical floor from the tail bound, shared by every check in the
    // implication chain; only meaningful when the modular hypothesis holds
    // and the bound is nonvacuous.
    double theory_lower = 0.0;
    bool theory_valid = false;
    if (spec.nu > 3) {
        BoundParams params{static_cast<double>(spec.n), spec.t_sparsity, spec.c, spec.nu,
                           spec.mu,                     spec.alpha};
        BoundValue fail = bound_t2_failure(params, tau, /*allow_any_n=*/true);
        theory_lower = 1.0 - fail.value;
        theory_valid = is_pm1_mod6(spec.n) && !fail.clamped;
    }

    for (CheckKind kind : spec.checks) {
        CheckSummary s;
        s.kind = kind;
        for (const TrialRecord& r : report.trials) {
            const bool ran = kind == CheckKind::condition_iv    ? r.iv_ran
                             : kind == CheckKind::condition_iii ? r.iii_ran
                             : kind == CheckKind::nullspace_falsify ? r.ii_ran
                                                                    : r.recovery_ran;
            const bool ok = kind == CheckKind::condition_iv    ? r.iv_ok
                            : kind == CheckKind::condition_iii ? r.iii_ok
                            : kind == CheckKind::nullspace_falsify ? r.ii_ok
                                                                   : r.recovery_ok;
            if (ran) {
                ++s.trials;
                if (ok) ++s.successes;
            }
        }
        s.frequency = s.trials ? static_cast<double>(s.successes) / s.trials : 0.0;
        auto wi = wilson_interval(s.successes, s.trials);
        s.wilson_lo = wi.lo;
        s.wilson_hi = wi.hi;
        s.theory_lower_bound = theory_lower;
        s.theory_valid = theory_valid;
        s.inconsistent = theory_valid && s.trials > 0 && s.wilson_hi < theory_lower;
        report.any_inconsistency = report.any_inconsistency || s.inconsistent;
        report.summaries.push_back(s);
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

namespace {

// Lexicographic enumeration of size-k subsets of {0..n-1}.
bool next_combination(std::vector<std::uint32_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (comb[i] + 1 <= n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::uint64_t mask_of(const std::vector<std::uint32_t>& members) {
    std::uint64_t m = 0;
    for (std::uint32_t v : members) m |= std::uint64_t{1} << v;
    return m;
}

}  // namespace

SmallNReport verify_small_n(const SmallNOptions& opts, const std::atomic<bool>* cancel) {
    if (opts.n_values.empty())
        throw std::invalid_argument("verify_small_n: need at least one group order");
    for (std::size_t n : opts.n_values)
        if (n == 0 || n > 13)
            throw std::invalid_argument(
                "verify_small_n: exhaustive enumeration is limited to 1 <= N <= 13");
    if (opts.t_max == 0 || opts.t_max > 2)
        throw std::invalid_argument("verify_small_n: t_max must be 1 or 2");
    if (opts.recovery && opts.amplitudes_per_support == 0)
        throw std::invalid_argument("verify_small_n: need amplitudes_per_support >= 1");

    const auto t_start = std::chrono::steady_clock::now();
    SmallNReport report;
    report.options = opts;

    for (std::size_t n : opts.n_values) {
        std::vector<SmallNCount> counts;
        for (std::size_t t = 1; t <= std::min(opts.t_max, n); ++t)
            counts.push_back(SmallNCount{n, t, (std::size_t{1} << n) - 1, 0, 0});

        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            if (cancel && cancel->load()) {
                report.interrupted = true;
                break;
            }
            FrequencySet omega = FrequencySet::from_mask(n, mask);
            IdempotentKernel k = kernel(omega);
            for (SmallNCount& count : counts) {
                const std::size_t t = count.t;
                if (!check_condition_iv(k, t).holds) continue;
                ++count.sets_passing;

                const std::size_t floor = ceil_count(cardinality_lower_bound(n, t));
                if (omega.cardinality() < floor) {
                    report.violations.push_back(SmallNViolation{
                        "cardinality", n, mask, t, 0,
                        static_cast<double>(floor) - static_cast<double>(omega.cardinality())});
                }

                if (!opts.recovery) continue;
                std::vector<std::uint32_t> comb(t);
                for (std::size_t i = 0; i < t; ++i) comb[i] = static_cast<std::uint32_t>(i);
                std::size_t support_rank = 0;
                do {
                    std::vector<std::int64_t> mem(comb.begin(), comb.end());
                    SupportSet support(n, mem);
                    for (std::size_t rep = 0; rep < opts.amplitudes_per_support; ++rep) {
                        auto rng = make_stream(mix_ids(opts.seed, n, mask, t),
                                               support_rank * opts.amplitudes_per_support + rep);
                        auto amps = sample_amplitudes(t, rng);
                        CyclicSignal x(n);
                        for (std::size_t i = 0; i < t; ++i) x[comb[i]] = amps[i];
                        SolveOptions solve_opts;
                        solve_opts.max_iter = opts.recovery_max_iter;
                        auto res = check_exact_recovery(x, omega, opts.recovery_tol, solve_opts);
                        ++count.recovery_solves;
                        if (!res.exact) {
                            report.violations.push_back(SmallNViolation{
                                "recovery", n, mask, t, mask_of(comb), res.error_linf});
                        }
                    }
                    ++support_rank;
                } while (next_combination(comb, n));
            }
        }
        report.counts.insert(report.counts.end(), counts.begin(), counts.end());
        if (report.interrupted) break;
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

WorkedExampleReport reproduce_worked_example(std::size_t trials, std::uint64_t seed,
                                           std::size_t jobs, const std::atomic<bool>* cancel) {
    WorkedExampleReport out;
    const double n = 1001.0;
    const std::size_t t = 2;
    const double c = 2.0;
    const std::uint32_t nu = 10;

    const double tau = tune_tau_t2(n, t, c);
    out.tau_n = tau * n;
    out.budget = ceil_count(out.tau_n);

    BoundParams params{n, t, c, nu, 0, 0.0};
    out.d = exponent_d(params);
    out.failure_bound = bound_t2_failure(params, tau).value;
    out.success_lower = 1.0 - out.failure_bound;
    out.cardinality_floor = ceil_count(cardinality_lower_bound(1001, t));

    CampaignSpec spec;
    spec.n = 1001;
    spec.t_sparsity = t;
    spec.c = c;
    spec.nu = nu;
    spec.model = SamplingModel::fixed_size;
    spec.omega_size = out.budget;
    spec.trials = trials;
    spec.seed = seed;
    spec.checks = {CheckKind::condition_iv};
    spec.jobs = jobs;
    out.campaign = run_campaign(spec, cancel);
    return out;
}

}  // namespace znsparse
