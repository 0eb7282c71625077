#include "znsparse/json_io.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace znsparse {

namespace {

std::vector<double> reals(const std::vector<cxd>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
    return out;
}

std::vector<double> imags(const std::vector<cxd>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].imag();
    return out;
}

std::vector<cxd> combine(const json& j, std::size_t expected, const char* what) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size())
        throw std::invalid_argument(std::string(what) + ": re/im must be arrays of equal length");
    if (re.size() != expected)
        throw std::invalid_argument(std::string(what) + ": re/im length does not match");
    std::vector<cxd> out(expected);
    for (std::size_t i = 0; i < expected; ++i)
        out[i] = cxd{re[i].get<double>(), im[i].get<double>()};
    return out;
}

std::size_t order_of(const json& j, const char* what) {
    const auto& n = j.at("n");
    if (!n.is_number_unsigned() && !n.is_number_integer())
        throw std::invalid_argument(std::string(what) + ": n must be an integer");
    const auto v = n.get<std::int64_t>();
    if (v <= 0) throw std::invalid_argument(std::string(what) + ": n must be positive");
    return static_cast<std::size_t>(v);
}

}  // namespace

json signal_to_json(const CyclicSignal& x) {
    return json{{"n", x.n()}, {"re", reals(x.values())}, {"im", imags(x.values())}};
}

CyclicSignal signal_from_json(const json& j) {
    const std::size_t n = order_of(j, "signal");
    return CyclicSignal(n, combine(j, n, "signal"));
}

json frequency_set_to_json(const FrequencySet& omega) {
    return json{{"n", omega.n()}, {"omega", omega.members()}};
}

FrequencySet frequency_set_from_json(const json& j) {
    const std::size_t n = order_of(j, "frequency set");
    const auto& arr = j.at("omega");
    if (!arr.is_array()) throw std::invalid_argument("frequency set: omega must be an array");
    std::vector<std::int64_t> members;
    members.reserve(arr.size());
    for (const auto& v : arr) members.push_back(v.get<std::int64_t>());
    return FrequencySet(n, members);
}

json problem_to_json(const RecoveryProblem& problem) {
    return json{{"n", problem.n},
                {"omega", problem.omega.members()},
                {"re", reals(problem.observed)},
                {"im", imags(problem.observed)}};
}

RecoveryProblem problem_from_json(const json& j) {
    const std::size_t n = order_of(j, "problem");
    const auto& arr = j.at("omega");
    std::vector<std::int64_t> members;
    members.reserve(arr.size());
    for (const auto& v : arr) members.push_back(v.get<std::int64_t>());
    FrequencySet omega(n, members);
    // Observed values are aligned with the *given* omega order, which the
    // set normalizes to sorted; realign accordingly.
    std::vector<cxd> given = combine(j, members.size(), "problem");
    std::vector<cxd> observed(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::size_t r = mod_reduce(members[i], n);
        const auto& sorted = omega.members();
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), r);
        observed[static_cast<std::size_t>(it - sorted.begin())] = given[i];
    }
    return RecoveryProblem{n, omega, observed};
}

json result_to_json(const RecoveryResult& result) {
    json j = signal_to_json(result.solution);
    j["l1_norm"] = result.l1_norm;
    j["iterations"] = result.iterations;
    j["residual"] = result.residual;
    j["converged"] = result.converged;
    return j;
}

json kernel_to_json(const IdempotentKernel& k, bool include_values) {
    json j{{"n", k.n()},
           {"omega", k.omega.members()},
           {"k0", k.k0},
           {"max_off_origin", k.max_off_origin},
           {"argmax_off_origin", k.argmax_off_origin}};
    if (include_values) {
        j["re"] = reals(k.values);
        j["im"] = imags(k.values);
    }
    return j;
}

json condition_iv_to_json(const ConditionIVResult& r) {
    json j{{"holds", r.holds},
           {"boundary", r.boundary},
           {"threshold", r.threshold},
           {"max_off_origin", r.max_off_origin}};
    if (r.has_witness) j["witness"] = r.witness;
    return j;
}

json certificate_to_json(const Certificate& cert, bool include_values) {
    json j{{"n", cert.p.n()},
           {"support", cert.support.members()},
           {"on_margin", cert.on_margin},
           {"off_margin", cert.off_margin},
           {"condition_iii", check_condition_iii(cert)}};
    if (include_values) {
        j["p_re"] = reals(cert.p.values());
        j["p_im"] = imags(cert.p.values());
        j["lambda_re"] = reals(cert.lambda);
        j["lambda_im"] = imags(cert.lambda);
    }
    return j;
}

json nullspace_to_json(const NullspaceReport& r) {
    const char* verdict = r.verdict == NullspaceVerdict::vacuously_true ? "vacuously-true"
                          : r.verdict == NullspaceVerdict::violated    ? "violated"
                                                                       : "no-violation-found";
    json j{{"verdict", verdict}, {"probes", r.probes}};
    if (r.verdict != NullspaceVerdict::vacuously_true) {
        j["min_slack"] = r.min_slack;
        j["witness"] = signal_to_json(r.worst);
    }
    return j;
}

json bound_to_json(const BoundValue& b) {
    return json{{"value", b.value}, {"raw", b.raw}, {"clamped", b.clamped}};
}

json campaign_spec_to_json(const CampaignSpec& spec) {
    json checks = json::array();
    for (CheckKind k : spec.checks) checks.push_back(to_string(k));
    return json{{"n", spec.n},
                {"t", spec.t_sparsity},
                {"c", spec.c},
                {"nu", spec.nu},
                {"mu", spec.mu},
                {"alpha", spec.alpha},
                {"model", to_string(spec.model)},
                {"tau", spec.tau},
                {"omega_size", spec.omega_size},
                {"trials", spec.trials},
                {"seed", spec.seed},
                {"checks", checks},
                {"falsifier_probes", spec.falsifier_probes},
                {"recovery_tol", spec.recovery_tol}};
}

CampaignSpec campaign_spec_from_json(const json& j) {
    CampaignSpec spec;
    spec.n = j.at("n").get<std::size_t>();
    spec.t_sparsity = j.value("t", std::size_t{1});
    spec.c = j.value("c", 2.0);
    spec.nu = j.value("nu", std::uint32_t{10});
    spec.mu = j.value("mu", std::uint32_t{10});
    spec.alpha = j.value("alpha", 2.0 / 3.0);
    if (j.contains("model")) {
        auto model = parse_model(j.at("model").get<std::string>());
        if (!model) throw std::invalid_argument("campaign spec: unknown sampling model");
        spec.model = *model;
    }
    spec.tau = j.value("tau", 0.0);
    spec.omega_size = j.value("omega_size", std::size_t{0});
    spec.trials = j.value("trials", std::size_t{2000});
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("checks")) {
        spec.checks.clear();
        for (const auto& name : j.at("checks")) {
            auto kind = parse_check(name.get<std::string>());
            if (!kind) throw std::invalid_argument("campaign spec: unknown check name");
            spec.checks.push_back(*kind);
        }
    }
    spec.falsifier_probes = j.value("falsifier_probes", std::size_t{200});
    spec.recovery_tol = j.value("recovery_tol", 1e-5);
    return spec;
}

namespace {

json summary_to_json(const CheckSummary& s) {
    return json{{"check", to_string(s.kind)},
                {"trials", s.trials},
                {"successes", s.successes},
                {"frequency", s.frequency},
                {"wilson_lo", s.wilson_lo},
                {"wilson_hi", s.wilson_hi},
                {"theory_lower_bound", s.theory_lower_bound},
                {"theory_valid", s.theory_valid},
                {"inconsistent", s.inconsistent}};
}

json trial_to_json(const TrialRecord& r) {
    json j{{"index", r.index}, {"omega_size", r.omega_size}};
    if (r.iv_ran) {
        j["iv_ok"] = r.iv_ok;
        j["iv_ratio"] = r.iv_ratio;
    }
    if (r.iii_ran) {
        j["iii_ok"] = r.iii_ok;
        j["on_margin"] = r.on_margin;
        j["off_margin"] = r.off_margin;
    }
    if (r.ii_ran) {
        j["ii_ok"] = r.ii_ok;
        j["ii_slack"] = r.ii_slack;
    }
    if (r.recovery_ran) {
        j["recovery_ok"] = r.recovery_ok;
        j["recovery_err"] = r.recovery_err;
    }
    return j;
}

}  // namespace

json campaign_report_to_json(const CampaignReport& report) {
    json trials = json::array();
    for (const TrialRecord& r : report.trials) trials.push_back(trial_to_json(r));
    json summaries = json::array();
    for (const CheckSummary& s : report.summaries) summaries.push_back(summary_to_json(s));
    return json{{"spec", campaign_spec_to_json(report.spec)},
                {"tau_used", report.tau_used},
                {"omega_size_used", report.omega_size_used},
                {"summaries", summaries},
                {"trials", trials},
                {"interrupted", report.interrupted},
                {"any_inconsistency", report.any_inconsistency},
                {"timing", json{{"elapsed_seconds", report.elapsed_seconds},
                                {"started_at", report.started_at}}}};
}

std::string campaign_trials_csv(const CampaignReport& report) {
    std::ostringstream out;
    out << "index,omega_size,iv_ran,iv_ok,iv_ratio,iii_ran,iii_ok,on_margin,off_margin,"
           "ii_ran,ii_ok,ii_slack,recovery_ran,recovery_ok,recovery_err\n";
    out.precision(17);
    for (const TrialRecord& r : report.trials) {
        out << r.index << ',' << r.omega_size << ',' << int(r.iv_ran) << ',' << int(r.iv_ok) << ','
            << r.iv_ratio << ',' << int(r.iii_ran) << ',' << int(r.iii_ok) << ',' << r.on_margin
            << ',' << r.off_margin << ',' << int(r.ii_ran) << ',' << int(r.ii_ok) << ','
            << r.ii_slack << ',' << int(r.recovery_ran) << ',' << int(r.recovery_ok) << ','
            << r.recovery_err << '\n';
    }
    return out.str();
}

json small_n_report_to_json(const SmallNReport& report) {
    json counts = json::array();
    for (const SmallNCount& c : report.counts)
        counts.push_back(json{{"n", c.n},
                              {"t", c.t},
                              {"sets_total", c.sets_total},
                              {"sets_passing", c.sets_passing},
                              {"recovery_solves", c.recovery_solves}});
    json violations = json::array();
    for (const SmallNViolation& v : report.violations)
        violations.push_back(json{{"kind", v.kind},
                                  {"n", v.n},
                                  {"omega_mask", v.omega_mask},
                                  {"t", v.t},
                                  {"support_mask", v.support_mask},
                                  {"detail", v.detail}});
    return json{{"counts", counts},
                {"violations", violations},
                {"ok", report.ok()},
                {"interrupted", report.interrupted},
                {"timing", json{{"elapsed_seconds", report.elapsed_seconds}}}};
}

json worked_example_to_json(const WorkedExampleReport& report) {
    return json{{"tau_n", report.tau_n},
                {"budget", report.budget},
                {"d", report.d},
                {"failure_bound", report.failure_bound},
                {"success_lower", report.success_lower},
                {"cardinality_floor", report.cardinality_floor},
                {"campaign", campaign_report_to_json(report.campaign)}};
}

}  // namespace znsparse
