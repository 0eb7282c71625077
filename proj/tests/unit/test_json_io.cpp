#include <doctest.h>

#include <exception>
#include <stdexcept>

#include "znsparse/json_io.hpp"
#include "znsparse/recovery.hpp"

using namespace znsparse;

TEST_CASE("signal wire format") {
    CyclicSignal x(3, {cxd{1.5, -2.0}, cxd{0.0, 0.25}, cxd{-3.0, 0.0}});
    json j = signal_to_json(x);
    CHECK(j.at("n") == 3);
    CHECK(j.at("re").size() == 3);
    auto back = signal_from_json(j);
    CHECK(back.linf_distance(x) == 0.0);

    CHECK_THROWS_AS(signal_from_json(json{{"n", 3}, {"re", {1, 2}}, {"im", {1, 2}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(signal_from_json(json{{"n", 2}, {"re", {1, 2}}, {"im", {1}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(signal_from_json(json{{"n", 0}, {"re", json::array()}, {"im", json::array()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(signal_from_json(json{{"n", 2.5}, {"re", {1, 2}}, {"im", {1, 2}}}),
                    std::invalid_argument);
    CHECK_THROWS(signal_from_json(json{{"n", 2}, {"re", {1, 2}}}));
}

TEST_CASE("frequency set wire format") {
    FrequencySet omega(9, {8, 0, 3});
    json j = frequency_set_to_json(omega);
    CHECK(j.at("omega") == json{0, 3, 8});  // members are kept sorted
    auto back = frequency_set_from_json(j);
    CHECK(back.members() == omega.members());
    CHECK(back.n() == 9);

    // Members land in [0, N) by reduction; duplicates after reduction fail.
    auto wrapped = frequency_set_from_json(json{{"n", 5}, {"omega", {-1, 6}}});
    CHECK(wrapped.members() == std::vector<std::uint32_t>{1, 4});
    CHECK_THROWS_AS(frequency_set_from_json(json{{"n", 5}, {"omega", {2, 7}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(frequency_set_from_json(json{{"n", 5}, {"omega", 3}}),
                    std::invalid_argument);
}

TEST_CASE("problem wire format keeps values aligned with frequencies") {
    // Observed values arrive in the caller's omega order and must follow
    // their frequencies into the sorted internal order.
    json j{{"n", 4}, {"omega", {2, 0}}, {"re", {20.0, 10.0}}, {"im", {-2.0, -1.0}}};
    auto problem = problem_from_json(j);
    REQUIRE(problem.omega.members() == std::vector<std::uint32_t>{0, 2});
    CHECK(problem.observed[0] == cxd{10.0, -1.0});
    CHECK(problem.observed[1] == cxd{20.0, -2.0});

    json round = problem_to_json(problem);
    auto again = problem_from_json(round);
    CHECK(again.observed == problem.observed);
    CHECK(again.omega.members() == problem.omega.members());

    CHECK_THROWS_AS(
        problem_from_json(json{{"n", 4}, {"omega", {0, 1}}, {"re", {1.0}}, {"im", {0.0}}}),
        std::invalid_argument);
    CHECK_THROWS_AS(problem_from_json(
                        json{{"n", 4}, {"omega", {0, 4}}, {"re", {1.0, 2.0}}, {"im", {0.0, 0.0}}}),
                    std::invalid_argument);
}

TEST_CASE("solve result serialization") {
    CyclicSignal x = CyclicSignal::impulse(6, 2, cxd{3.0, -4.0});
    auto res = minimal_extrapolation(make_problem(x, FrequencySet::full(6)));
    json j = result_to_json(res);
    CHECK(j.at("converged") == true);
    CHECK(j.at("iterations") == 1);
    CHECK(j.at("l1_norm").get<double>() == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(j.at("residual").get<double>() < 1e-10);
    CHECK(j.at("re").size() == 6);
}

TEST_CASE("kernel and certificate serialization") {
    auto k = kernel(FrequencySet(7, {0, 1, 2}));
    json jk = kernel_to_json(k);
    CHECK(jk.at("k0").get<double>() == doctest::Approx(3.0));
    CHECK(jk.at("argmax_off_origin") == 1);
    CHECK(jk.contains("re"));
    CHECK_FALSE(kernel_to_json(k, false).contains("re"));

    json jiv = condition_iv_to_json(check_condition_iv(k, 1));
    CHECK(jiv.at("holds") == false);
    CHECK(jiv.at("witness") == 1);

    auto cert = build_certificate(k, SupportSet(7, {3}), {cxd{1, 0}});
    json jc = certificate_to_json(cert);
    CHECK(jc.at("support") == json{3});
    CHECK(jc.at("on_margin").get<double>() < 1e-12);
    CHECK(jc.contains("p_re"));
    CHECK_FALSE(certificate_to_json(cert, false).contains("p_re"));

    json jn = nullspace_to_json(nullspace_falsifier(FrequencySet::full(5), SupportSet(5, {0}), 1, 1));
    CHECK(jn.at("verdict") == "vacuously-true");
    CHECK_FALSE(jn.contains("min_slack"));
    json jn2 = nullspace_to_json(nullspace_falsifier(FrequencySet(5, {0, 1}), SupportSet(5, {0}), 5, 1));
    CHECK(jn2.contains("min_slack"));
    CHECK(jn2.at("witness").contains("re"));
}

TEST_CASE("bound serialization") {
    json j = bound_to_json(BoundValue{1.0, 3.5, true});
    CHECK(j.at("value") == 1.0);
    CHECK(j.at("raw") == 3.5);
    CHECK(j.at("clamped") == true);
}

TEST_CASE("campaign spec round trip and defaults") {
    CampaignSpec spec;
    spec.n = 101;
    spec.t_sparsity = 2;
    spec.model = SamplingModel::fixed_size;
    spec.omega_size = 30;
    spec.trials = 12;
    spec.seed = 9;
    spec.checks = {CheckKind::condition_iv, CheckKind::recovery};
    json j = campaign_spec_to_json(spec);
    auto back = campaign_spec_from_json(j);
    CHECK(campaign_spec_to_json(back) == j);

    auto minimal = campaign_spec_from_json(json{{"n", 31}});
    CHECK(minimal.n == 31);
    CHECK(minimal.trials == 2000);
    CHECK(minimal.model == SamplingModel::bernoulli);
    REQUIRE(minimal.checks.size() == 1);
    CHECK(minimal.checks[0] == CheckKind::condition_iv);

    CHECK_THROWS_AS(campaign_spec_from_json(json{{"n", 31}, {"model", "weird"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(campaign_spec_from_json(json{{"n", 31}, {"checks", {"nope"}}}),
                    std::invalid_argument);
}

TEST_CASE("campaign report serialization and csv") {
    CampaignSpec spec;
    spec.n = 31;
    spec.t_sparsity = 1;
    spec.tau = 0.4;
    spec.trials = 8;
    spec.seed = 5;
    spec.checks = {CheckKind::condition_iv};
    spec.jobs = 1;
    auto report = run_campaign(spec);

    json j = campaign_report_to_json(report);
    CHECK(j.at("trials").size() == 8);
    CHECK(j.at("summaries").size() == 1);
    CHECK(j.at("summaries")[0].at("check") == "iv");
    CHECK(j.at("interrupted") == false);
    // Timing is quarantined so the payload itself stays reproducible.
    CHECK(j.at("timing").contains("elapsed_seconds"));
    json j2 = campaign_report_to_json(run_campaign(spec));
    j.erase("timing");
    j2.erase("timing");
    CHECK(j == j2);

    const std::string csv = campaign_trials_csv(report);
    CHECK(csv.rfind("index,omega_size,iv_ran,iv_ok,iv_ratio,", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 9);  // header + one row per trial
}

TEST_CASE("small-group and worked-example serialization") {
    SmallNOptions opts;
    opts.n_values = {5};
    opts.t_max = 1;
    opts.recovery = false;
    json j = small_n_report_to_json(verify_small_n(opts));
    CHECK(j.at("ok") == true);
    CHECK(j.at("counts").size() == 1);
    CHECK(j.at("counts")[0].at("sets_passing") == 6);
    CHECK(j.at("violations").empty());

    json jp = worked_example_to_json(reproduce_worked_example(1, 0, 1));
    CHECK(jp.at("budget") == 222);
    CHECK(jp.at("cardinality_floor") == 16);
    CHECK(jp.at("campaign").at("spec").at("n") == 1001);
}
