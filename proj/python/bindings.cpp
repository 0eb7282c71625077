// Python bindings for the znsparse core. Thin: structs map to classes
// with plain attributes, long-running solves release the GIL, and the
// JSON/CSV wire formats are exposed as string helpers so scripts can
// interoperate with the command line tool.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "znsparse/bounds.hpp"
#include "znsparse/campaign.hpp"
#include "znsparse/fourier.hpp"
#include "znsparse/json_io.hpp"
#include "znsparse/kernel.hpp"
#include "znsparse/recovery.hpp"
#include "znsparse/sampling.hpp"
#include "znsparse/signal.hpp"

namespace py = pybind11;
using namespace znsparse;

namespace {

bool set_contains(const ResidueSet& s, std::int64_t r) {
    return s.n() > 0 && s.contains(mod_reduce(r, s.n()));
}

}  // namespace

PYBIND11_MODULE(_znsparse, m) {
    m.doc() = "sparse recovery on Z_N from restricted frequency data";

    py::class_<CyclicSignal>(m, "CyclicSignal",
                             "Complex-valued function on Z_N; holds time-domain signals "
                             "and spectra alike.")
        .def(py::init<>())
        .def(py::init<std::size_t>(), py::arg("n"))
        .def(py::init<std::size_t, std::vector<cxd>>(), py::arg("n"), py::arg("values"))
        .def_static("impulse", &CyclicSignal::impulse, py::arg("n"), py::arg("t"),
                    py::arg("amplitude") = cxd{1.0, 0.0})
        .def("n", &CyclicSignal::n)
        .def("values", [](const CyclicSignal& s) { return s.values(); })
        .def("at_mod", &CyclicSignal::at_mod, py::arg("t"))
        .def("l1_norm", &CyclicSignal::l1_norm)
        .def("l2_norm", &CyclicSignal::l2_norm)
        .def("linf_norm", &CyclicSignal::linf_norm)
        .def("linf_distance", &CyclicSignal::linf_distance, py::arg("other"))
        .def("all_finite", &CyclicSignal::all_finite)
        .def("__len__", &CyclicSignal::n)
        .def("__getitem__",
             [](const CyclicSignal& s, std::size_t t) {
                 if (t >= s.n()) throw py::index_error();
                 return s[t];
             })
        .def("__setitem__",
             [](CyclicSignal& s, std::size_t t, cxd v) {
                 if (t >= s.n()) throw py::index_error();
                 s[t] = v;
             })
        .def("__repr__", [](const CyclicSignal& s) {
            return "CyclicSignal(n=" + std::to_string(s.n()) + ")";
        });

    py::class_<ResidueSet>(m, "ResidueSet",
                           "Sorted set of distinct residues of Z_N; used both as the "
                           "frequency set and as a time support.")
        .def(py::init<>())
        .def(py::init<std::size_t, const std::vector<std::int64_t>&>(), py::arg("n"),
             py::arg("members"))
        .def_static("full", &ResidueSet::full, py::arg("n"))
        .def_static("from_mask", &ResidueSet::from_mask, py::arg("n"), py::arg("mask"))
        .def("n", &ResidueSet::n)
        .def("cardinality", &ResidueSet::cardinality)
        .def("empty", &ResidueSet::empty)
        .def("members", [](const ResidueSet& s) { return s.members(); })
        .def("contains", &set_contains, py::arg("r"))
        .def("complement", &ResidueSet::complement)
        .def("indicator", &ResidueSet::indicator)
        .def("__len__", &ResidueSet::cardinality)
        .def("__contains__", &set_contains)
        .def("__repr__", [](const ResidueSet& s) {
            return "ResidueSet(n=" + std::to_string(s.n()) +
                   ", size=" + std::to_string(s.cardinality()) + ")";
        });
    m.attr("FrequencySet") = m.attr("ResidueSet");
    m.attr("SupportSet") = m.attr("ResidueSet");

    m.def("mod_reduce", &mod_reduce, py::arg("v"), py::arg("n"));

    // Transforms (unitary normalization, direct summation).
    m.def("dft", &dft, py::arg("x"), py::call_guard<py::gil_scoped_release>());
    m.def("idft", &idft, py::arg("xhat"), py::call_guard<py::gil_scoped_release>());

    // Idempotent kernel and the two certificate-side conditions.
    py::class_<IdempotentKernel>(m, "IdempotentKernel")
        .def_readonly("omega", &IdempotentKernel::omega)
        .def_readonly("values", &IdempotentKernel::values)
        .def_readonly("k0", &IdempotentKernel::k0)
        .def_readonly("max_off_origin", &IdempotentKernel::max_off_origin)
        .def_readonly("argmax_off_origin", &IdempotentKernel::argmax_off_origin)
        .def("n", &IdempotentKernel::n);
    m.def("kernel", &kernel, py::arg("omega"), py::call_guard<py::gil_scoped_release>());

    py::class_<ConditionIVResult>(m, "ConditionIVResult")
        .def_readonly("holds", &ConditionIVResult::holds)
        .def_readonly("boundary", &ConditionIVResult::boundary)
        .def_readonly("threshold", &ConditionIVResult::threshold)
        .def_readonly("max_off_origin", &ConditionIVResult::max_off_origin)
        .def_readonly("witness", &ConditionIVResult::witness)
        .def_readonly("has_witness", &ConditionIVResult::has_witness);
    m.def("check_condition_iv", &check_condition_iv, py::arg("kernel"), py::arg("t_sparsity"));
    m.def("cardinality_lower_bound", &cardinality_lower_bound, py::arg("n"),
          py::arg("t_sparsity"));

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("p", &Certificate::p)
        .def_readonly("support", &Certificate::support)
        .def_readonly("lambda_", &Certificate::lambda)
        .def_readonly("on_margin", &Certificate::on_margin)
        .def_readonly("off_margin", &Certificate::off_margin);
    m.def("build_certificate", &build_certificate, py::arg("kernel"), py::arg("support"),
          py::arg("lambda_"), py::call_guard<py::gil_scoped_release>());
    m.def("check_condition_iii", &check_condition_iii, py::arg("certificate"));

    // Recovery by l1 minimal extrapolation.
    py::class_<RecoveryProblem>(m, "RecoveryProblem")
        .def(py::init<>())
        .def_readwrite("n", &RecoveryProblem::n)
        .def_readwrite("omega", &RecoveryProblem::omega)
        .def_readwrite("observed", &RecoveryProblem::observed);
    m.def("make_problem", &make_problem, py::arg("x"), py::arg("omega"));

    py::class_<SolveOptions>(m, "SolveOptions")
        .def(py::init([](double tol, std::size_t max_iter) {
                 SolveOptions o;
                 o.tol = tol;
                 o.max_iter = max_iter;
                 return o;
             }),
             py::arg("tol") = 1e-9, py::arg("max_iter") = 20000)
        .def_readwrite("tol", &SolveOptions::tol)
        .def_readwrite("max_iter", &SolveOptions::max_iter);

    py::class_<RecoveryResult>(m, "RecoveryResult")
        .def_readonly("solution", &RecoveryResult::solution)
        .def_readonly("l1_norm", &RecoveryResult::l1_norm)
        .def_readonly("iterations", &RecoveryResult::iterations)
        .def_readonly("residual", &RecoveryResult::residual)
        .def_readonly("converged", &RecoveryResult::converged)
        .def_readonly("dual", &RecoveryResult::dual);
    m.def("minimal_extrapolation", &minimal_extrapolation, py::arg("problem"),
          py::arg("opts") = SolveOptions{}, py::call_guard<py::gil_scoped_release>());

    py::class_<ExactRecoveryResult>(m, "ExactRecoveryResult")
        .def_readonly("exact", &ExactRecoveryResult::exact)
        .def_readonly("error_linf", &ExactRecoveryResult::error_linf)
        .def_readonly("solve", &ExactRecoveryResult::solve);
    m.def("check_exact_recovery", &check_exact_recovery, py::arg("x"), py::arg("omega"),
          py::arg("tol") = 1e-5, py::arg("opts") = SolveOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::enum_<NullspaceVerdict>(m, "NullspaceVerdict")
        .value("vacuously_true", NullspaceVerdict::vacuously_true)
        .value("no_violation_found", NullspaceVerdict::no_violation_found)
        .value("violated", NullspaceVerdict::violated);
    py::class_<NullspaceReport>(m, "NullspaceReport")
        .def_readonly("verdict", &NullspaceReport::verdict)
        .def_readonly("min_slack", &NullspaceReport::min_slack)
        .def_readonly("worst", &NullspaceReport::worst)
        .def_readonly("probes", &NullspaceReport::probes);
    m.def("nullspace_falsifier", &nullspace_falsifier, py::arg("omega"), py::arg("support"),
          py::arg("trials"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());

    // Frequency-set sampling. The support/amplitude helpers take a
    // (master_seed, stream_index) pair naming one of the derived streams.
    m.def(
        "sample_omega",
        [](std::size_t n, double tau, std::uint64_t seed) {
            return sample_omega(BernoulliConfig{n, tau, seed});
        },
        py::arg("n"), py::arg("tau"), py::arg("seed"));
    m.def("sample_omega_fixed_size", &sample_omega_fixed_size, py::arg("n"), py::arg("size"),
          py::arg("seed"));
    m.def(
        "sample_support",
        [](std::size_t n, std::size_t size, std::uint64_t master_seed,
           std::uint64_t stream_index) {
            auto rng = make_stream(master_seed, stream_index);
            return sample_support(n, size, rng);
        },
        py::arg("n"), py::arg("size"), py::arg("master_seed"), py::arg("stream_index"));
    m.def(
        "sample_amplitudes",
        [](std::size_t count, std::uint64_t master_seed, std::uint64_t stream_index) {
            auto rng = make_stream(master_seed, stream_index);
            return sample_amplitudes(count, rng);
        },
        py::arg("count"), py::arg("master_seed"), py::arg("stream_index"));
    m.def(
        "sample_unimodular",
        [](std::size_t count, std::uint64_t master_seed, std::uint64_t stream_index) {
            auto rng = make_stream(master_seed, stream_index);
            return sample_unimodular(count, rng);
        },
        py::arg("count"), py::arg("master_seed"), py::arg("stream_index"));

    // Probability bounds and tuning rules.
    py::class_<BoundParams>(m, "BoundParams")
        .def(py::init([](double n, std::size_t t_sparsity, double c, std::uint32_t nu,
                         std::uint32_t mu, double alpha) {
                 BoundParams p;
                 p.n = n;
                 p.t_sparsity = t_sparsity;
                 p.c = c;
                 p.nu = nu;
                 p.mu = mu;
                 p.alpha = alpha;
                 return p;
             }),
             py::arg("n") = 0.0, py::arg("t_sparsity") = 1, py::arg("c") = 0.0,
             py::arg("nu") = 0, py::arg("mu") = 0, py::arg("alpha") = 0.0)
        .def_readwrite("n", &BoundParams::n)
        .def_readwrite("t_sparsity", &BoundParams::t_sparsity)
        .def_readwrite("c", &BoundParams::c)
        .def_readwrite("nu", &BoundParams::nu)
        .def_readwrite("mu", &BoundParams::mu)
        .def_readwrite("alpha", &BoundParams::alpha)
        .def("a", &BoundParams::a)
        .def("alpha_prime", &BoundParams::alpha_prime);
    py::class_<BoundValue>(m, "BoundValue")
        .def_readonly("value", &BoundValue::value)
        .def_readonly("raw", &BoundValue::raw)
        .def_readonly("clamped", &BoundValue::clamped);
    m.def("tune_tau_t2", &tune_tau_t2, py::arg("n"), py::arg("t_sparsity"), py::arg("c"));
    m.def("tune_tau_t3", &tune_tau_t3, py::arg("n"), py::arg("t_sparsity"), py::arg("c"));
    m.def("exponent_d", &exponent_d, py::arg("params"));
    m.def("bound_t2_failure", &bound_t2_failure, py::arg("params"), py::arg("tau"),
          py::arg("allow_any_n") = false);
    m.def("bound_t3_failure", &bound_t3_failure, py::arg("params"));
    m.def("corollary_t3_delta_max", &corollary_t3_delta_max, py::arg("c"));
    m.def("crt_reference_size", &crt_reference_size, py::arg("n"), py::arg("t_sparsity"),
          py::arg("delta"));
    m.def("is_pm1_mod6", &is_pm1_mod6, py::arg("n"));

    // Monte Carlo campaigns and the exhaustive small-N sweep.
    py::enum_<SamplingModel>(m, "SamplingModel")
        .value("bernoulli", SamplingModel::bernoulli)
        .value("fixed_size", SamplingModel::fixed_size);
    py::enum_<CheckKind>(m, "CheckKind")
        .value("condition_iv", CheckKind::condition_iv)
        .value("condition_iii", CheckKind::condition_iii)
        .value("nullspace_falsify", CheckKind::nullspace_falsify)
        .value("recovery", CheckKind::recovery);
    m.def("check_name", [](CheckKind k) { return to_string(k); }, py::arg("kind"));
    m.def("model_name", [](SamplingModel s) { return to_string(s); }, py::arg("model"));
    m.def("parse_check", &parse_check, py::arg("name"));
    m.def("parse_model", &parse_model, py::arg("name"));

    py::class_<CampaignSpec>(m, "CampaignSpec")
        .def(py::init<>())
        .def_readwrite("n", &CampaignSpec::n)
        .def_readwrite("t_sparsity", &CampaignSpec::t_sparsity)
        .def_readwrite("c", &CampaignSpec::c)
        .def_readwrite("nu", &CampaignSpec::nu)
        .def_readwrite("mu", &CampaignSpec::mu)
        .def_readwrite("alpha", &CampaignSpec::alpha)
        .def_readwrite("model", &CampaignSpec::model)
        .def_readwrite("tau", &CampaignSpec::tau)
        .def_readwrite("omega_size", &CampaignSpec::omega_size)
        .def_readwrite("trials", &CampaignSpec::trials)
        .def_readwrite("seed", &CampaignSpec::seed)
        .def_readwrite("checks", &CampaignSpec::checks)
        .def_readwrite("jobs", &CampaignSpec::jobs)
        .def_readwrite("falsifier_probes", &CampaignSpec::falsifier_probes)
        .def_readwrite("recovery_tol", &CampaignSpec::recovery_tol);
    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("index", &TrialRecord::index)
        .def_readonly("omega_size", &TrialRecord::omega_size)
        .def_readonly("iv_ran", &TrialRecord::iv_ran)
        .def_readonly("iv_ok", &TrialRecord::iv_ok)
        .def_readonly("iv_ratio", &TrialRecord::iv_ratio)
        .def_readonly("iii_ran", &TrialRecord::iii_ran)
        .def_readonly("iii_ok", &TrialRecord::iii_ok)
        .def_readonly("on_margin", &TrialRecord::on_margin)
        .def_readonly("off_margin", &TrialRecord::off_margin)
        .def_readonly("ii_ran", &TrialRecord::ii_ran)
        .def_readonly("ii_ok", &TrialRecord::ii_ok)
        .def_readonly("ii_slack", &TrialRecord::ii_slack)
        .def_readonly("recovery_ran", &TrialRecord::recovery_ran)
        .def_readonly("recovery_ok", &TrialRecord::recovery_ok)
        .def_readonly("recovery_err", &TrialRecord::recovery_err);
    py::class_<CheckSummary>(m, "CheckSummary")
        .def_readonly("kind", &CheckSummary::kind)
        .def_readonly("trials", &CheckSummary::trials)
        .def_readonly("successes", &CheckSummary::successes)
        .def_readonly("frequency", &CheckSummary::frequency)
        .def_readonly("wilson_lo", &CheckSummary::wilson_lo)
        .def_readonly("wilson_hi", &CheckSummary::wilson_hi)
        .def_readonly("theory_lower_bound", &CheckSummary::theory_lower_bound)
        .def_readonly("theory_valid", &CheckSummary::theory_valid)
        .def_readonly("inconsistent", &CheckSummary::inconsistent);
    py::class_<CampaignReport>(m, "CampaignReport")
        .def_readonly("spec", &CampaignReport::spec)
        .def_readonly("tau_used", &CampaignReport::tau_used)
        .def_readonly("omega_size_used", &CampaignReport::omega_size_used)
        .def_readonly("trials", &CampaignReport::trials)
        .def_readonly("summaries", &CampaignReport::summaries)
        .def_readonly("interrupted", &CampaignReport::interrupted)
        .def_readonly("any_inconsistency", &CampaignReport::any_inconsistency)
        .def_readonly("elapsed_seconds", &CampaignReport::elapsed_seconds)
        .def_readonly("started_at", &CampaignReport::started_at)
        .def("summary", &CampaignReport::summary, py::arg("kind"),
             py::return_value_policy::reference_internal);
    py::class_<WilsonInterval>(m, "WilsonInterval")
        .def_readonly("lo", &WilsonInterval::lo)
        .def_readonly("hi", &WilsonInterval::hi);
    m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("trials"),
          py::arg("z") = 1.959963984540054);
    m.def(
        "run_campaign", [](const CampaignSpec& spec) { return run_campaign(spec); },
        py::arg("spec"), py::call_guard<py::gil_scoped_release>());

    py::class_<SmallNOptions>(m, "SmallNOptions")
        .def(py::init<>())
        .def_readwrite("n_values", &SmallNOptions::n_values)
        .def_readwrite("t_max", &SmallNOptions::t_max)
        .def_readwrite("recovery", &SmallNOptions::recovery)
        .def_readwrite("amplitudes_per_support", &SmallNOptions::amplitudes_per_support)
        .def_readwrite("seed", &SmallNOptions::seed)
        .def_readwrite("recovery_tol", &SmallNOptions::recovery_tol)
        .def_readwrite("recovery_max_iter", &SmallNOptions::recovery_max_iter)
        .def_readwrite("jobs", &SmallNOptions::jobs);
    py::class_<SmallNViolation>(m, "SmallNViolation")
        .def_readonly("kind", &SmallNViolation::kind)
        .def_readonly("n", &SmallNViolation::n)
        .def_readonly("omega_mask", &SmallNViolation::omega_mask)
        .def_readonly("t", &SmallNViolation::t)
        .def_readonly("support_mask", &SmallNViolation::support_mask)
        .def_readonly("detail", &SmallNViolation::detail);
    py::class_<SmallNCount>(m, "SmallNCount")
        .def_readonly("n", &SmallNCount::n)
        .def_readonly("t", &SmallNCount::t)
        .def_readonly("sets_total", &SmallNCount::sets_total)
        .def_readonly("sets_passing", &SmallNCount::sets_passing)
        .def_readonly("recovery_solves", &SmallNCount::recovery_solves);
    py::class_<SmallNReport>(m, "SmallNReport")
        .def_readonly("options", &SmallNReport::options)
        .def_readonly("counts", &SmallNReport::counts)
        .def_readonly("violations", &SmallNReport::violations)
        .def_readonly("interrupted", &SmallNReport::interrupted)
        .def_readonly("elapsed_seconds", &SmallNReport::elapsed_seconds)
        .def("ok", &SmallNReport::ok);
    m.def(
        "verify_small_n", [](const SmallNOptions& opts) { return verify_small_n(opts); },
        py::arg("opts"), py::call_guard<py::gil_scoped_release>());

    py::class_<WorkedExampleReport>(m, "WorkedExampleReport")
        .def_readonly("tau_n", &WorkedExampleReport::tau_n)
        .def_readonly("budget", &WorkedExampleReport::budget)
        .def_readonly("d", &WorkedExampleReport::d)
        .def_readonly("failure_bound", &WorkedExampleReport::failure_bound)
        .def_readonly("success_lower", &WorkedExampleReport::success_lower)
        .def_readonly("cardinality_floor", &WorkedExampleReport::cardinality_floor)
        .def_readonly("campaign", &WorkedExampleReport::campaign);
    m.def(
        "reproduce_worked_example",
        [](std::size_t trials, std::uint64_t seed, std::size_t jobs) {
            return reproduce_worked_example(trials, seed, jobs);
        },
        py::arg("trials") = 2000, py::arg("seed") = 0, py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());

    // Wire formats shared with the CLI. *_json return indented JSON text;
    // the from_json helpers parse the same shapes.
    m.def("signal_json", [](const CyclicSignal& x) { return signal_to_json(x).dump(2); });
    m.def("signal_from_json",
          [](const std::string& text) { return signal_from_json(json::parse(text)); });
    m.def("frequency_set_json",
          [](const FrequencySet& s) { return frequency_set_to_json(s).dump(2); });
    m.def("frequency_set_from_json",
          [](const std::string& text) { return frequency_set_from_json(json::parse(text)); });
    m.def("problem_json", [](const RecoveryProblem& p) { return problem_to_json(p).dump(2); });
    m.def("problem_from_json",
          [](const std::string& text) { return problem_from_json(json::parse(text)); });
    m.def("result_json", [](const RecoveryResult& r) { return result_to_json(r).dump(2); });
    m.def(
        "kernel_json",
        [](const IdempotentKernel& k, bool include_values) {
            return kernel_to_json(k, include_values).dump(2);
        },
        py::arg("kernel"), py::arg("include_values") = true);
    m.def("condition_iv_json",
          [](const ConditionIVResult& r) { return condition_iv_to_json(r).dump(2); });
    m.def(
        "certificate_json",
        [](const Certificate& c, bool include_values) {
            return certificate_to_json(c, include_values).dump(2);
        },
        py::arg("certificate"), py::arg("include_values") = true);
    m.def("nullspace_json", [](const NullspaceReport& r) { return nullspace_to_json(r).dump(2); });
    m.def("bound_json", [](const BoundValue& b) { return bound_to_json(b).dump(2); });
    m.def("campaign_spec_json",
          [](const CampaignSpec& s) { return campaign_spec_to_json(s).dump(2); });
    m.def("campaign_spec_from_json",
          [](const std::string& text) { return campaign_spec_from_json(json::parse(text)); });
    m.def("campaign_report_json",
          [](const CampaignReport& r) { return campaign_report_to_json(r).dump(2); });
    m.def("campaign_trials_csv", &campaign_trials_csv, py::arg("report"));
    m.def("small_n_report_json",
          [](const SmallNReport& r) { return small_n_report_to_json(r).dump(2); });
    m.def("worked_example_json",
          [](const WorkedExampleReport& r) { return worked_example_to_json(r).dump(2); });
}
