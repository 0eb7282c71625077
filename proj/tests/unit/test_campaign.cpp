#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "znsparse/campaign.hpp"
#include "znsparse/json_io.hpp"

using namespace znsparse;

TEST_CASE("check and model names round trip") {
    for (CheckKind k : {CheckKind::condition_iv, CheckKind::condition_iii,
                        CheckKind::nullspace_falsify, CheckKind::recovery}) {
        auto parsed = parse_check(to_string(k));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == k);
    }
    for (SamplingModel m : {SamplingModel::bernoulli, SamplingModel::fixed_size}) {
        auto parsed = parse_model(to_string(m));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == m);
    }
    CHECK_FALSE(parse_check("nope").has_value());
    CHECK_FALSE(parse_model("nope").has_value());
    CHECK(parse_check("ii") == CheckKind::nullspace_falsify);
    CHECK(parse_model("fixed_size") == SamplingModel::fixed_size);
}

TEST_CASE("score interval") {
    auto empty = wilson_interval(0, 0);
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);

    // Textbook 95% values for 5 successes out of 10.
    auto half = wilson_interval(5, 10);
    CHECK(half.lo == doctest::Approx(0.2366).epsilon(5e-3));
    CHECK(half.hi == doctest::Approx(0.7634).epsilon(5e-3));
    CHECK(half.lo + half.hi == doctest::Approx(1.0).epsilon(1e-12));

    auto all = wilson_interval(10, 10);
    CHECK(all.hi > 1.0 - 1e-12);
    CHECK(all.lo > 0.69);
    CHECK(all.lo < 0.75);

    auto none = wilson_interval(0, 10);
    CHECK(none.lo == 0.0);
    CHECK(none.hi < 0.31);

    // Interval shrinks with the sample count.
    auto big = wilson_interval(500, 1000);
    CHECK(big.hi - big.lo < half.hi - half.lo);
}

namespace {

CampaignSpec small_spec() {
    CampaignSpec spec;
    spec.n = 31;
    spec.t_sparsity = 1;
    spec.model = SamplingModel::bernoulli;
    spec.tau = 0.45;
    spec.trials = 40;
    spec.seed = 7;
    spec.checks = {CheckKind::condition_iv, CheckKind::condition_iii,
                   CheckKind::nullspace_falsify};
    spec.falsifier_probes = 20;
    spec.jobs = 1;
    return spec;
}

}  // namespace

TEST_CASE("campaign results do not depend on the thread count") {
    auto spec = small_spec();
    auto seq = run_campaign(spec);
    spec.jobs = 3;
    auto par = run_campaign(spec);
    REQUIRE(seq.trials.size() == spec.trials);
    REQUIRE(par.trials.size() == spec.trials);
    CHECK(campaign_trials_csv(seq) == campaign_trials_csv(par));
    REQUIRE(seq.summaries.size() == par.summaries.size());
    for (std::size_t i = 0; i < seq.summaries.size(); ++i) {
        CHECK(seq.summaries[i].successes == par.summaries[i].successes);
        CHECK(seq.summaries[i].trials == par.summaries[i].trials);
    }

    // Same seed reproduces; a different seed almost surely does not.
    auto again = run_campaign(small_spec());
    CHECK(campaign_trials_csv(seq) == campaign_trials_csv(again));
    auto other_spec = small_spec();
    other_spec.seed = 8;
    CHECK(campaign_trials_csv(seq) != campaign_trials_csv(run_campaign(other_spec)));
}

TEST_CASE("campaign summaries aggregate the trial records") {
    auto report = run_campaign(small_spec());
    for (const CheckSummary& s : report.summaries) {
        std::size_t ran = 0, ok = 0;
        for (const TrialRecord& r : report.trials) {
            const bool did = s.kind == CheckKind::condition_iv    ? r.iv_ran
                             : s.kind == CheckKind::condition_iii ? r.iii_ran
                             : s.kind == CheckKind::nullspace_falsify ? r.ii_ran
                                                                      : r.recovery_ran;
            const bool good = s.kind == CheckKind::condition_iv    ? r.iv_ok
                              : s.kind == CheckKind::condition_iii ? r.iii_ok
                              : s.kind == CheckKind::nullspace_falsify ? r.ii_ok
                                                                       : r.recovery_ok;
            if (did) {
                ++ran;
                if (good) ++ok;
            }
        }
        CHECK(s.trials == ran);
        CHECK(s.successes == ok);
        CHECK(s.frequency == doctest::Approx(static_cast<double>(ok) / ran));
        auto wi = wilson_interval(ok, ran);
        CHECK(s.wilson_lo == wi.lo);
        CHECK(s.wilson_hi == wi.hi);
        // With an explicit (untuned) rate on a small group the tail bound
        // is vacuous, so it cannot flag anything.
        CHECK_FALSE(s.theory_valid);
        CHECK_FALSE(s.inconsistent);
    }
    const CheckSummary* iv = report.summary(CheckKind::condition_iv);
    REQUIRE(iv != nullptr);
    CHECK(iv->trials == 40);
    CHECK(report.summary(CheckKind::recovery) == nullptr);
}

TEST_CASE("implication chain holds trial by trial") {
    // Condition (iv) is sufficient for small margins, and small margins
    // are sufficient for the null-space inequality: no trial may pass a
    // premise and fail a conclusion it implies.
    auto spec = small_spec();
    spec.trials = 60;
    spec.seed = 99;
    auto report = run_campaign(spec);
    std::size_t iv_passes = 0;
    for (const TrialRecord& r : report.trials) {
        REQUIRE(r.iv_ran);
        REQUIRE(r.iii_ran);
        REQUIRE(r.ii_ran);
        if (r.iv_ok) {
            ++iv_passes;
            CHECK(r.iii_ok);
            CHECK(r.ii_ok);
        }
        if (r.iii_ok) CHECK(r.ii_ok);
    }
    // tau = 0.45 on Z_31 passes the 1-sparse coherence test often enough
    // for the implication to be exercised.
    CHECK(iv_passes > 0);
}

TEST_CASE("recovery check on the full spectrum always succeeds") {
    CampaignSpec spec;
    spec.n = 13;
    spec.t_sparsity = 1;
    spec.model = SamplingModel::fixed_size;
    spec.omega_size = 13;
    spec.trials = 5;
    spec.seed = 3;
    spec.checks = {CheckKind::recovery, CheckKind::nullspace_falsify};
    spec.jobs = 1;
    auto report = run_campaign(spec);
    CHECK(report.omega_size_used == 13);
    for (const TrialRecord& r : report.trials) {
        CHECK(r.omega_size == 13);
        CHECK(r.recovery_ok);
        CHECK(r.recovery_err < 1e-5);
        CHECK(r.ii_ok);       // vacuously true
        CHECK(r.ii_slack == 1.0);
    }
}

TEST_CASE("campaign rejects bad specifications") {
    CampaignSpec spec = small_spec();
    spec.trials = 0;
    CHECK_THROWS_AS(run_campaign(spec), std::invalid_argument);
    spec = small_spec();
    spec.checks.clear();
    CHECK_THROWS_AS(run_campaign(spec), std::invalid_argument);
    spec = small_spec();
    spec.t_sparsity = 32;
    CHECK_THROWS_AS(run_campaign(spec), std::invalid_argument);
    spec = small_spec();
    spec.tau = 1.0;
    CHECK_THROWS_AS(run_campaign(spec), std::invalid_argument);
    spec = small_spec();
    spec.model = SamplingModel::fixed_size;
    spec.omega_size = 32;
    CHECK_THROWS_AS(run_campaign(spec), std::invalid_argument);
}

TEST_CASE("campaign honors cancellation") {
    auto spec = small_spec();
    std::atomic<bool> cancel{true};
    auto report = run_campaign(spec, &cancel);
    CHECK(report.interrupted);
    CHECK(report.trials.empty());
    REQUIRE(!report.summaries.empty());
    CHECK(report.summaries[0].trials == 0);
}

TEST_CASE("exhaustive small-group verification") {
    SmallNOptions opts;
    opts.n_values = {5, 7};
    opts.t_max = 2;
    opts.recovery = false;
    auto report = verify_small_n(opts);
    CHECK(report.ok());
    REQUIRE(report.counts.size() == 4);

    // Frozen census of coherence-passing sets, previously cross-checked
    // by independent enumeration.
    CHECK(report.counts[0].n == 5);
    CHECK(report.counts[0].t == 1);
    CHECK(report.counts[0].sets_total == 31);
    CHECK(report.counts[0].sets_passing == 6);
    CHECK(report.counts[1].t == 2);
    CHECK(report.counts[1].sets_passing == 1);
    CHECK(report.counts[2].n == 7);
    CHECK(report.counts[2].sets_total == 127);
    CHECK(report.counts[2].sets_passing == 57);
    CHECK(report.counts[3].sets_passing == 8);
}

TEST_CASE("small-group recovery sweep") {
    SmallNOptions opts;
    opts.n_values = {5};
    opts.t_max = 2;
    opts.recovery = true;
    opts.amplitudes_per_support = 2;
    opts.seed = 3;
    auto report = verify_small_n(opts);
    CHECK(report.ok());
    REQUIRE(report.counts.size() == 2);
    // Every passing set is tried on every support: 5 singletons and 10
    // pairs, two amplitude draws each.
    CHECK(report.counts[0].recovery_solves == report.counts[0].sets_passing * 5 * 2);
    CHECK(report.counts[1].recovery_solves == report.counts[1].sets_passing * 10 * 2);
    CHECK(report.violations.empty());
}

TEST_CASE("small-group verification rejects out-of-range requests") {
    SmallNOptions opts;
    CHECK_THROWS_AS(verify_small_n(opts), std::invalid_argument);
    opts.n_values = {14};
    CHECK_THROWS_AS(verify_small_n(opts), std::invalid_argument);
    opts.n_values = {5};
    opts.t_max = 3;
    CHECK_THROWS_AS(verify_small_n(opts), std::invalid_argument);
    opts.t_max = 2;
    opts.amplitudes_per_support = 0;
    CHECK_THROWS_AS(verify_small_n(opts), std::invalid_argument);

    std::atomic<bool> cancel{true};
    SmallNOptions ok;
    ok.n_values = {5};
    ok.recovery = false;
    auto report = verify_small_n(ok, &cancel);
    CHECK(report.interrupted);
    CHECK_FALSE(report.ok());
}

TEST_CASE("worked example scalars") {
    auto report = reproduce_worked_example(/*trials=*/3, /*seed=*/1, /*jobs=*/1);
    CHECK(report.tau_n > 221.0);
    CHECK(report.tau_n < 221.2);
    CHECK(report.budget == 222);
    CHECK(report.d == doctest::Approx(0.3999491836327762).epsilon(1e-12));
    CHECK(report.failure_bound > 0.62);
    CHECK(report.failure_bound < 0.64);
    CHECK(report.success_lower == doctest::Approx(1.0 - report.failure_bound));
    CHECK(report.cardinality_floor == 16);
    CHECK(report.campaign.spec.n == 1001);
    CHECK(report.campaign.omega_size_used == 222);
    CHECK(report.campaign.trials.size() == 3);
    const CheckSummary* iv = report.campaign.summary(CheckKind::condition_iv);
    REQUIRE(iv != nullptr);
    CHECK(iv->theory_valid);
    CHECK(iv->theory_lower_bound == doctest::Approx(report.success_lower));
    CHECK_FALSE(iv->inconsistent);
    for (const TrialRecord& r : report.campaign.trials) CHECK(r.omega_size == 222);
}

TEST_CASE("bernoulli and fixed-size sampling agree at a matched expected budget") {
    CampaignSpec fixed;
    fixed.n = 1001;
    fixed.t_sparsity = 2;
    fixed.model = SamplingModel::fixed_size;
    fixed.omega_size = 222;
    fixed.trials = 2000;
    fixed.seed = 2026;
    fixed.checks = {CheckKind::condition_iv};
    auto fixed_report = run_campaign(fixed);

    CampaignSpec bern = fixed;
    bern.model = SamplingModel::bernoulli;
    bern.omega_size = 0;
    bern.tau = 222.0 / 1001.0;  // same expected cardinality
    auto bern_report = run_campaign(bern);

    const CheckSummary* f = fixed_report.summary(CheckKind::condition_iv);
    const CheckSummary* b = bern_report.summary(CheckKind::condition_iv);
    REQUIRE(f != nullptr);
    REQUIRE(b != nullptr);
    CHECK(f->trials == 2000);
    CHECK(b->trials == 2000);
    // The two sampling models describe the same average selection; their
    // empirical pass rates may differ only by sampling noise.
    CHECK(std::abs(f->frequency - b->frequency) < 0.05);
}

TEST_CASE("single trial at a near-full sampling rate passes every check") {
    CampaignSpec spec;
    spec.n = 1001;
    spec.t_sparsity = 2;
    spec.model = SamplingModel::bernoulli;
    spec.tau = 0.999;  // omega is (almost) the whole dual group
    spec.trials = 1;
    spec.seed = 11;
    spec.checks = {CheckKind::condition_iv, CheckKind::condition_iii,
                   CheckKind::nullspace_falsify, CheckKind::recovery};
    auto report = run_campaign(spec);
    REQUIRE(report.trials.size() == 1);
    const TrialRecord& r = report.trials.front();
    CHECK(r.omega_size > 900);
    CHECK(r.iv_ran);
    CHECK(r.iv_ok);
    CHECK(r.iii_ran);
    CHECK(r.iii_ok);
    CHECK(r.ii_ran);
    CHECK(r.ii_ok);
    CHECK(r.recovery_ran);
    CHECK(r.recovery_ok);
    for (const CheckSummary& s : report.summaries) CHECK(s.frequency == 1.0);
}
