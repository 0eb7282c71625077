// Command-line front end: one-shot solves and diagnostics, Monte Carlo
// campaigns, exhaustive small-group verification, and the worked-example
// pipeline, with JSON or CSV output.
//
// Exit codes: 0 success, 1 invalid parameters or I/O failure, 2 invariant
// violation detected (a counterexample or an empirical/theory inconsistency),
// 3 solver non-convergence.

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "znsparse/bounds.hpp"
#include "znsparse/campaign.hpp"
#include "znsparse/fourier.hpp"
#include "znsparse/json_io.hpp"
#include "znsparse/kernel.hpp"
#include "znsparse/recovery.hpp"
#include "znsparse/sampling.hpp"
#include "znsparse/signal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadParams = 1;
constexpr int kExitViolation = 2;
constexpr int kExitNoConvergence = 3;

std::atomic<bool> g_cancel{false};

void handle_interrupt(int) { g_cancel.store(true); }

void install_interrupt_handler() {
    std::signal(SIGINT, handle_interrupt);
    std::signal(SIGTERM, handle_interrupt);
}

struct Global {
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    std::string out;             // empty => stdout
    std::string format = "json";

    bool csv() const { return format == "csv"; }
};

znsparse::json read_json_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        return znsparse::json::parse(buffer.str());
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    znsparse::json j;
    in >> j;
    return j;
}

void write_output(const Global& global, const std::string& text) {
    if (global.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(global.out);
    if (!out) throw std::invalid_argument("cannot open output file: " + global.out);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Frequency-set input shared by kernel / check-iv / certificate: either a
// JSON document or --n with explicit members.
struct SetInput {
    std::string in_path;
    std::int64_t n = 0;
    std::vector<std::int64_t> omega;

    znsparse::FrequencySet resolve() const {
        if (n > 0) return znsparse::FrequencySet(static_cast<std::size_t>(n), omega);
        return znsparse::frequency_set_from_json(read_json_input(in_path));
    }
};

void add_set_options(CLI::App* cmd, SetInput& input) {
    auto* in = cmd->add_option("-i,--in", input.in_path,
                               "frequency-set JSON file ('-' or omitted: stdin)");
    auto* n = cmd->add_option("-n,--n", input.n, "group order (with --omega)");
    cmd->add_option("--omega", input.omega, "frequency members (with --n)")->needs(n);
    n->excludes(in);
}

// --- recover ----------------------------------------------------------------

int run_recover(const Global& global, const std::string& in_path, double tol,
                std::size_t max_iter) {
    auto problem = znsparse::problem_from_json(read_json_input(in_path));
    znsparse::SolveOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    auto result = znsparse::minimal_extrapolation(problem, opts);
    if (global.csv()) {
        std::string csv = "t,re,im\n";
        for (std::size_t t = 0; t < result.solution.n(); ++t)
            csv += std::to_string(t) + "," + num(result.solution[t].real()) + "," +
                   num(result.solution[t].imag()) + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::result_to_json(result).dump(2));
    }
    return result.converged ? kExitOk : kExitNoConvergence;
}

// --- kernel / check-iv / certificate -----------------------------------------

int run_kernel(const Global& global, const SetInput& input, bool values) {
    auto k = znsparse::kernel(input.resolve());
    if (global.csv()) {
        std::string csv = "t,re,im,abs\n";
        for (std::size_t t = 0; t < k.values.size(); ++t)
            csv += std::to_string(t) + "," + num(k.values[t].real()) + "," +
                   num(k.values[t].imag()) + "," + num(std::abs(k.values[t])) + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::kernel_to_json(k, values).dump(2));
    }
    return kExitOk;
}

int run_check_iv(const Global& global, const SetInput& input, std::size_t t_sparsity) {
    auto k = znsparse::kernel(input.resolve());
    auto r = znsparse::check_condition_iv(k, t_sparsity);
    if (global.csv()) {
        std::string csv = "holds,boundary,threshold,max_off_origin,witness\n";
        csv += std::string(r.holds ? "1" : "0") + "," + (r.boundary ? "1" : "0") + "," +
               num(r.threshold) + "," + num(r.max_off_origin) + "," +
               (r.has_witness ? std::to_string(r.witness) : "") + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::condition_iv_to_json(r).dump(2));
    }
    return kExitOk;
}

int run_certificate(const Global& global, const SetInput& input,
                    const std::vector<std::int64_t>& support_members,
                    const std::vector<double>& lambda_re, const std::vector<double>& lambda_im,
                    bool values) {
    auto omega = input.resolve();
    auto k = znsparse::kernel(omega);
    znsparse::SupportSet support(omega.n(), support_members);
    std::vector<znsparse::cxd> lambda(support.cardinality(), znsparse::cxd{1.0, 0.0});
    if (!lambda_re.empty() || !lambda_im.empty()) {
        if (lambda_re.size() != support.cardinality() ||
            (!lambda_im.empty() && lambda_im.size() != lambda_re.size()))
            throw std::invalid_argument("certificate: lambda values must pair with the support");
        for (std::size_t i = 0; i < lambda.size(); ++i)
            lambda[i] = {lambda_re[i], lambda_im.empty() ? 0.0 : lambda_im[i]};
    }
    auto cert = znsparse::build_certificate(k, support, lambda);
    if (global.csv()) {
        std::string csv = "t,p_re,p_im,in_support\n";
        for (std::size_t t = 0; t < cert.p.n(); ++t)
            csv += std::to_string(t) + "," + num(cert.p[t].real()) + "," +
                   num(cert.p[t].imag()) + "," + (cert.support.contains(t) ? "1" : "0") + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::certificate_to_json(cert, values).dump(2));
    }
    return kExitOk;
}

// --- sample-omega -------------------------------------------------------------

int run_sample_omega(const Global& global, std::size_t n, double tau, std::size_t size) {
    znsparse::FrequencySet omega =
        tau > 0.0 ? znsparse::sample_omega(znsparse::BernoulliConfig{n, tau, global.seed})
                  : znsparse::sample_omega_fixed_size(n, size, global.seed);
    if (global.csv()) {
        std::string csv = "omega\n";
        for (std::uint32_t w : omega.members()) csv += std::to_string(w) + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::frequency_set_to_json(omega).dump(2));
    }
    return kExitOk;
}

// --- bounds -------------------------------------------------------------------

std::size_t ceil_count(double value) {
    return static_cast<std::size_t>(std::ceil(value - 1e-9));
}

int run_bounds_t2(const Global& global, const znsparse::BoundParams& params, double tau,
                  bool allow_any_n) {
    const double used = tau > 0.0 ? tau : znsparse::tune_tau_t2(params.n, params.t_sparsity,
                                                                params.c);
    auto failure = znsparse::bound_t2_failure(params, used, allow_any_n);
    znsparse::json j{{"tau", used},
                     {"tau_n", used * params.n},
                     {"budget", ceil_count(used * params.n)},
                     {"failure", znsparse::bound_to_json(failure)},
                     {"success_lower", 1.0 - failure.value}};
    if (params.nu > 3) j["exponent_d"] = znsparse::exponent_d(params);
    if (global.csv()) {
        std::string csv = "tau,tau_n,budget,failure,success_lower,exponent_d\n";
        csv += num(used) + "," + num(used * params.n) + "," +
               std::to_string(ceil_count(used * params.n)) + "," + num(failure.value) + "," +
               num(1.0 - failure.value) + "," +
               (params.nu > 3 ? num(znsparse::exponent_d(params)) : "") + "\n";
        write_output(global, csv);
    } else {
        write_output(global, j.dump(2));
    }
    return kExitOk;
}

int run_bounds_t3(const Global& global, const znsparse::BoundParams& params) {
    const double tau = znsparse::tune_tau_t3(params.n, params.t_sparsity, params.c);
    auto failure = znsparse::bound_t3_failure(params);
    znsparse::json j{{"tau", tau},
                     {"tau_n", tau * params.n},
                     {"budget", ceil_count(tau * params.n)},
                     {"failure", znsparse::bound_to_json(failure)},
                     {"success_lower", 1.0 - failure.value}};
    if (params.c > 1.0) j["delta_max"] = znsparse::corollary_t3_delta_max(params.c);
    if (global.csv()) {
        std::string csv = "tau,tau_n,budget,failure,success_lower,delta_max\n";
        csv += num(tau) + "," + num(tau * params.n) + "," +
               std::to_string(ceil_count(tau * params.n)) + "," + num(failure.value) + "," +
               num(1.0 - failure.value) + "," +
               (params.c > 1.0 ? num(znsparse::corollary_t3_delta_max(params.c)) : "") + "\n";
        write_output(global, csv);
    } else {
        write_output(global, j.dump(2));
    }
    return kExitOk;
}

int run_bounds_crt(const Global& global, double n, std::size_t t_sparsity, double delta) {
    const std::size_t size = znsparse::crt_reference_size(n, t_sparsity, delta);
    if (global.csv()) {
        write_output(global, "size\n" + std::to_string(size) + "\n");
    } else {
        write_output(global, znsparse::json{{"size", size}}.dump(2));
    }
    return kExitOk;
}

int run_bounds_floor(const Global& global, std::size_t n, std::size_t t_sparsity) {
    const double bound = znsparse::cardinality_lower_bound(n, t_sparsity);
    znsparse::json j{{"bound", bound}, {"floor", ceil_count(bound)}};
    if (global.csv()) {
        write_output(global,
                     "bound,floor\n" + num(bound) + "," + std::to_string(ceil_count(bound)) + "\n");
    } else {
        write_output(global, j.dump(2));
    }
    return kExitOk;
}

// --- campaign -----------------------------------------------------------------

int run_campaign_cmd(const Global& global, znsparse::CampaignSpec spec, bool seed_given,
                     bool jobs_given) {
    if (seed_given) spec.seed = global.seed;
    if (jobs_given) spec.jobs = global.jobs;
    install_interrupt_handler();
    auto report = znsparse::run_campaign(spec, &g_cancel);
    if (global.csv()) {
        write_output(global, znsparse::campaign_trials_csv(report));
    } else {
        write_output(global, znsparse::campaign_report_to_json(report).dump(2));
    }
    if (report.any_inconsistency) {
        std::cerr << "campaign: empirical frequency fell below a nonvacuous theoretical bound\n";
        return kExitViolation;
    }
    return kExitOk;
}

// --- verify-small-n -------------------------------------------------------------

int run_verify_small_n(const Global& global, znsparse::SmallNOptions opts) {
    opts.seed = global.seed;
    opts.jobs = global.jobs;
    install_interrupt_handler();
    auto report = znsparse::verify_small_n(opts, &g_cancel);
    for (const auto& v : report.violations)
        std::cerr << "violation: kind=" << v.kind << " n=" << v.n << " omega_mask=" << v.omega_mask
                  << " t=" << v.t << " support_mask=" << v.support_mask << " detail=" << v.detail
                  << "\n";
    if (global.csv()) {
        std::string csv = "n,t,sets_total,sets_passing,recovery_solves\n";
        for (const auto& c : report.counts)
            csv += std::to_string(c.n) + "," + std::to_string(c.t) + "," +
                   std::to_string(c.sets_total) + "," + std::to_string(c.sets_passing) + "," +
                   std::to_string(c.recovery_solves) + "\n";
        write_output(global, csv);
    } else {
        write_output(global, znsparse::small_n_report_to_json(report).dump(2));
    }
    return report.ok() ? kExitOk : kExitViolation;
}

// --- reproduce-example -----------------------------------------------------------

int run_reproduce_example(const Global& global, std::size_t trials) {
    install_interrupt_handler();
    auto report = znsparse::reproduce_worked_example(trials, global.seed, global.jobs, &g_cancel);
    if (global.csv()) {
        std::string csv = "quantity,value\n";
        csv += "tau_n," + num(report.tau_n) + "\n";
        csv += "budget," + std::to_string(report.budget) + "\n";
        csv += "exponent_d," + num(report.d) + "\n";
        csv += "failure_bound," + num(report.failure_bound) + "\n";
        csv += "success_lower," + num(report.success_lower) + "\n";
        csv += "cardinality_floor," + std::to_string(report.cardinality_floor) + "\n";
        if (const auto* s = report.campaign.summary(znsparse::CheckKind::condition_iv)) {
            csv += "empirical_frequency," + num(s->frequency) + "\n";
            csv += "wilson_lo," + num(s->wilson_lo) + "\n";
            csv += "wilson_hi," + num(s->wilson_hi) + "\n";
        }
        write_output(global, csv);
    } else {
        write_output(global, znsparse::worked_example_to_json(report).dump(2));
    }
    return report.campaign.any_inconsistency ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse recovery on Z_N from restricted frequency data"};
    app.require_subcommand(1);

    Global global;
    auto* seed_opt = app.add_option("--seed", global.seed, "master seed for random draws");
    auto* jobs_opt = app.add_option("--jobs", global.jobs, "worker threads (0: all cores)");
    app.add_option("--out", global.out, "write the report here instead of stdout");
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // recover
    auto* recover = app.add_subcommand("recover", "solve one extrapolation problem from JSON");
    std::string recover_in;
    double recover_tol = 1e-9;
    std::size_t recover_max_iter = 20000;
    recover->add_option("-i,--in", recover_in, "problem JSON file ('-' or omitted: stdin)");
    recover->add_option("--tol", recover_tol, "feasibility/stop tolerance");
    recover->add_option("--max-iter", recover_max_iter, "iteration budget");

    // kernel
    auto* kernel_cmd = app.add_subcommand("kernel", "evaluate the frequency-set kernel");
    SetInput kernel_in;
    bool kernel_no_values = false;
    add_set_options(kernel_cmd, kernel_in);
    kernel_cmd->add_flag("--no-values", kernel_no_values, "omit the pointwise values");

    // check-iv
    auto* checkiv = app.add_subcommand("check-iv", "test the kernel coherence condition");
    SetInput checkiv_in;
    std::size_t checkiv_t = 1;
    add_set_options(checkiv, checkiv_in);
    checkiv->add_option("-t,--t", checkiv_t, "sparsity level T");

    // certificate
    auto* cert = app.add_subcommand("certificate", "build the dual interpolation certificate");
    SetInput cert_in;
    std::vector<std::int64_t> cert_support;
    std::vector<double> cert_lre, cert_lim;
    bool cert_no_values = false;
    add_set_options(cert, cert_in);
    cert->add_option("--support", cert_support, "support points")->required();
    cert->add_option("--lambda-re", cert_lre, "unimodular data, real parts (default all 1)");
    cert->add_option("--lambda-im", cert_lim, "unimodular data, imaginary parts");
    cert->add_flag("--no-values", cert_no_values, "omit the pointwise values");

    // sample-omega
    auto* sample = app.add_subcommand("sample-omega", "draw a random frequency set");
    std::size_t sample_n = 0, sample_size = 0;
    double sample_tau = 0.0;
    sample->add_option("-n,--n", sample_n, "group order")->required();
    auto* tau_opt = sample->add_option("--tau", sample_tau, "Bernoulli inclusion rate");
    sample->add_option("--size", sample_size, "fixed cardinality (uniform model)")
        ->excludes(tau_opt);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "closed-form tail bounds and tuning rules");
    bounds->require_subcommand(1);
    znsparse::BoundParams bp;
    bp.n = 1001;
    bp.t_sparsity = 2;
    bp.c = 2.0;
    bp.nu = 10;
    bp.mu = 10;
    bp.alpha = 2.0 / 3.0;
    double bounds_tau = 0.0, bounds_delta = 1.0;
    bool bounds_any_n = false;
    auto add_bound_params = [&](CLI::App* cmd) {
        cmd->add_option("-n,--n", bp.n, "group order N");
        cmd->add_option("-t,--t", bp.t_sparsity, "sparsity level T");
        cmd->add_option("-c,--c", bp.c, "oversampling constant C");
        cmd->add_option("--nu", bp.nu, "arc count of the modulus discretization");
        cmd->add_option("--mu", bp.mu, "phase discretization parameter");
        cmd->add_option("--alpha", bp.alpha, "split point of the two-term bound");
    };
    auto* b_t2 = bounds->add_subcommand("t2", "whole-spectrum coherence failure bound");
    add_bound_params(b_t2);
    b_t2->add_option("--tau", bounds_tau, "explicit rate (default: tuned)");
    b_t2->add_flag("--allow-any-n", bounds_any_n, "skip the N = ±1 mod 6 hypothesis");
    auto* b_t3 = bounds->add_subcommand("t3", "fixed-support failure bound");
    add_bound_params(b_t3);
    auto* b_crt = bounds->add_subcommand("crt", "reference budget of the uniform-model theorem");
    add_bound_params(b_crt);
    b_crt->add_option("--delta", bounds_delta, "oversampling margin");
    auto* b_floor = bounds->add_subcommand("bound4", "cardinality floor of coherence-passing sets");
    add_bound_params(b_floor);

    // campaign
    auto* campaign = app.add_subcommand("campaign", "Monte Carlo verification campaign");
    std::string campaign_spec_path;
    znsparse::CampaignSpec cspec;
    std::vector<std::string> campaign_checks;
    std::string campaign_model = "bernoulli";
    auto* spec_opt = campaign->add_option("--spec", campaign_spec_path,
                                          "campaign spec JSON file ('-': stdin)");
    auto* n_opt = campaign->add_option("-n,--n", cspec.n, "group order");
    campaign->add_option("-t,--t", cspec.t_sparsity, "sparsity level T");
    campaign->add_option("-c,--c", cspec.c, "oversampling constant C");
    campaign->add_option("--nu", cspec.nu, "arc count of the modulus discretization");
    campaign->add_option("--mu", cspec.mu, "phase discretization parameter");
    campaign->add_option("--alpha", cspec.alpha, "split point of the two-term bound");
    campaign->add_option("--model", campaign_model, "sampling model")
        ->check(CLI::IsMember({"bernoulli", "fixed-size"}));
    campaign->add_option("--tau", cspec.tau, "Bernoulli rate (default: tuned)");
    campaign->add_option("--size", cspec.omega_size, "fixed cardinality (uniform model)");
    campaign->add_option("--trials", cspec.trials, "number of trials");
    campaign->add_option("--checks", campaign_checks,
                         "checks to run: iv, iii, ii-falsify, recovery");
    campaign->add_option("--probes", cspec.falsifier_probes, "null-space falsifier probes");
    campaign->add_option("--recovery-tol", cspec.recovery_tol, "exactness tolerance");
    spec_opt->excludes(n_opt);

    // verify-small-n
    auto* smalln = app.add_subcommand("verify-small-n",
                                      "exhaustively verify every frequency set of a small group");
    znsparse::SmallNOptions sopts;
    std::vector<std::size_t> smalln_values;
    std::size_t smalln_max = 0;
    bool smalln_no_recovery = false;
    auto* n_list = smalln->add_option("-n,--n", smalln_values, "group orders (each <= 13)");
    smalln->add_option("--n-max", smalln_max, "verify every order 2..n-max")->excludes(n_list);
    smalln->add_option("--t-max", sopts.t_max, "largest sparsity level (<= 2)");
    smalln->add_flag("--no-recovery", smalln_no_recovery, "skip the recovery sweep");
    smalln->add_option("--amps", sopts.amplitudes_per_support, "amplitude draws per support");
    smalln->add_option("--recovery-tol", sopts.recovery_tol, "exactness tolerance");
    smalln->add_option("--max-iter", sopts.recovery_max_iter, "solver iteration budget");

    // reproduce-example
    auto* example = app.add_subcommand(
        "reproduce-example", "tuned budget, bounds and Monte Carlo for N=1001, T=2");
    std::size_t example_trials = 2000;
    example->add_option("--trials", example_trials, "number of Monte Carlo trials");

    // Let global flags appear after the subcommand name as well.
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands([](CLI::App*) { return true; }))
            nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadParams;
    }

    try {
        if (recover->parsed())
            return run_recover(global, recover_in, recover_tol, recover_max_iter);
        if (kernel_cmd->parsed()) return run_kernel(global, kernel_in, !kernel_no_values);
        if (checkiv->parsed()) return run_check_iv(global, checkiv_in, checkiv_t);
        if (cert->parsed())
            return run_certificate(global, cert_in, cert_support, cert_lre, cert_lim,
                                   !cert_no_values);
        if (sample->parsed()) {
            if (sample_tau <= 0.0 && sample_size == 0)
                throw std::invalid_argument("sample-omega: give --tau or --size");
            return run_sample_omega(global, sample_n, sample_tau, sample_size);
        }
        if (bounds->parsed()) {
            if (b_t2->parsed()) return run_bounds_t2(global, bp, bounds_tau, bounds_any_n);
            if (b_t3->parsed()) return run_bounds_t3(global, bp);
            if (b_crt->parsed()) return run_bounds_crt(global, bp.n, bp.t_sparsity, bounds_delta);
            return run_bounds_floor(global, static_cast<std::size_t>(bp.n), bp.t_sparsity);
        }
        if (campaign->parsed()) {
            if (!campaign_spec_path.empty()) {
                cspec = znsparse::campaign_spec_from_json(read_json_input(campaign_spec_path));
            } else {
                auto model = znsparse::parse_model(campaign_model);
                if (!model) throw std::invalid_argument("campaign: unknown model");
                cspec.model = *model;
                if (!campaign_checks.empty()) {
                    cspec.checks.clear();
                    for (const std::string& name : campaign_checks) {
                        auto kind = znsparse::parse_check(name);
                        if (!kind)
                            throw std::invalid_argument("campaign: unknown check '" + name + "'");
                        cspec.checks.push_back(*kind);
                    }
                }
                cspec.seed = global.seed;
                cspec.jobs = global.jobs;
            }
            return run_campaign_cmd(global, cspec, seed_opt->count() > 0, jobs_opt->count() > 0);
        }
        if (smalln->parsed()) {
            if (smalln_max > 0)
                for (std::size_t n = 2; n <= smalln_max; ++n) sopts.n_values.push_back(n);
            else if (!smalln_values.empty())
                sopts.n_values = smalln_values;
            else
                sopts.n_values = {5, 7, 11, 13};
            sopts.recovery = !smalln_no_recovery;
            return run_verify_small_n(global, sopts);
        }
        return run_reproduce_example(global, example_trials);
    } catch (const znsparse::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadParams;
    }
}
