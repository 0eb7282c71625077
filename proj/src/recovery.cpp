#include "znsparse/recovery.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "znsparse/fourier.hpp"
#include "znsparse/sampling.hpp"

namespace znsparse {

namespace {

void validate(const RecoveryProblem& problem) {
    if (problem.n == 0) throw std::invalid_argument("recovery: group order must be positive");
    if (problem.omega.n() != problem.n)
        throw std::invalid_argument("recovery: omega group order mismatch");
    if (problem.omega.empty())
        throw std::invalid_argument("recovery: empty frequency set gives an unbounded problem");
    if (problem.observed.size() != problem.omega.cardinality())
        throw std::invalid_argument("recovery: observed values do not align with omega");
    for (const cxd& v : problem.observed)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("recovery: observed values must be finite");
}

// Entrywise proximal map of the modulus sum: shrink |v| by theta, keep phase.
cxd soft_threshold(cxd v, double theta) {
    double m = std::abs(v);
    if (m <= theta) return {0.0, 0.0};
    return v * ((m - theta) / m);
}

CyclicSignal phase_of(const CyclicSignal& y) {
    CyclicSignal p(y.n());
    for (std::size_t t = 0; t < y.n(); ++t) {
        double m = std::abs(y[t]);
        if (m > 0.0) p[t] = y[t] / m;
    }
    return p;
}

}  // namespace

RecoveryProblem make_problem(const CyclicSignal& x, const FrequencySet& omega) {
    if (omega.n() != x.n()) throw std::invalid_argument("make_problem: mismatched group orders");
    RootTable table(x.n());
    return RecoveryProblem{x.n(), omega, restricted_dft(x, omega, table)};
}

RecoveryResult minimal_extrapolation(const RecoveryProblem& problem, const SolveOptions& opts) {
    validate(problem);
    if (!(opts.tol > 0.0)) throw std::invalid_argument("recovery: tolerance must be positive");
    if (opts.max_iter == 0) throw std::invalid_argument("recovery: max_iter must be >= 1");

    const std::size_t n = problem.n;
    const FrequencySet& omega = problem.omega;
    const std::vector<cxd>& b = problem.observed;
    RootTable table(n);

    RecoveryResult result;

    if (omega.cardinality() == n) {
        // Full spectrum observed: the constraints determine y outright.
        CyclicSignal spectrum(n, b);
        result.solution = idft(spectrum);
        result.l1_norm = result.solution.l1_norm();
        result.iterations = 1;
        double resid = 0.0;
        auto back = restricted_dft(result.solution, omega, table);
        for (std::size_t i = 0; i < b.size(); ++i)
            resid = std::max(resid, std::abs(back[i] - b[i]));
        result.residual = resid;
        result.converged = true;
        result.dual = phase_of(result.solution);
        return result;
    }

    // Douglas-Rachford on min ‖y‖₁ + ind{ŷ|_Ω = b}, step 1.0. The driver z
    // carries the running state; u = ŷ|_Ω of z is updated in closed form so
    // each iteration costs one restricted transform in each direction.
    const double theta = 1.0;
    CyclicSignal z(n);
    CyclicSignal y(n);
    CyclicSignal y_prev(n);
    std::vector<cxd> u(omega.cardinality(), cxd{0.0, 0.0});
    std::vector<cxd> fv(omega.cardinality());
    bool have_prev = false;

    for (std::size_t it = 1; it <= opts.max_iter; ++it) {
        for (std::size_t t = 0; t < n; ++t) y[t] = soft_threshold(z[t], theta);

        auto fy = restricted_dft(y, omega, table);
        double resid = 0.0;
        for (std::size_t i = 0; i < fy.size(); ++i) resid = std::max(resid, std::abs(fy[i] - b[i]));

        double change = std::numeric_limits<double>::infinity();
        if (have_prev) change = y.linf_distance(y_prev);

        result.iterations = it;
        result.residual = resid;
        if ((resid < opts.tol && change < opts.tol) || it == opts.max_iter) {
            result.converged = resid < opts.tol && change < opts.tol;
            result.dual = CyclicSignal(n);
            for (std::size_t t = 0; t < n; ++t) result.dual[t] = z[t] - y[t];
            break;
        }

        // Reflected point 2y - z projected onto the constraint set; the new
        // driver is z⁺ = y - F*_Ω((F_Ω(2y - z)) - b).
        for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = 2.0 * fy[i] - u[i] - b[i];
        CyclicSignal correction = restricted_idft(fv, omega, table);
        for (std::size_t t = 0; t < n; ++t) z[t] = y[t] - correction[t];
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += b[i] - fy[i];
        y_prev = y;
        have_prev = true;
    }

    result.solution = y;
    result.l1_norm = y.l1_norm();
    return result;
}

ExactRecoveryResult check_exact_recovery(const CyclicSignal& x, const FrequencySet& omega,
                                         double tol, const SolveOptions& opts) {
    if (!x.all_finite()) throw std::invalid_argument("check_exact_recovery: signal must be finite");
    ExactRecoveryResult out;
    out.solve = minimal_extrapolation(make_problem(x, omega), opts);
    out.error_linf = out.solve.solution.linf_distance(x);
    out.exact = out.solve.converged && out.error_linf < tol;
    return out;
}

NullspaceReport nullspace_falsifier(const FrequencySet& omega, const SupportSet& support,
                                    std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("nullspace_falsifier: need trials >= 1");
    const std::size_t n = omega.n();
    if (support.n() != n)
        throw std::invalid_argument("nullspace_falsifier: mismatched group orders");

    NullspaceReport report;
    report.worst = CyclicSignal(n);
    if (omega.cardinality() == n) {
        report.verdict = NullspaceVerdict::vacuously_true;
        return report;
    }

    RootTable table(n);
    const FrequencySet complement = omega.complement();
    double min_slack = std::numeric_limits<double>::infinity();

    auto consider = [&](const CyclicSignal& z) {
        double on = 0.0, off = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double m = std::abs(z[t]);
            if (support.contains(t))
                on += m;
            else
                off += m;
        }
        double l1 = on + off;
        if (l1 <= 0.0) return;
        double slack = (off - on) / l1;
        if (slack < min_slack) {
            min_slack = slack;
            report.worst = z;
        }
        ++report.probes;
    };

    // The projections of the impulses on S onto the null space are the
    // natural extremal candidates; probe them before the random draws.
    for (std::uint32_t s : support.members()) {
        CyclicSignal delta = CyclicSignal::impulse(n, s);
        auto coeffs = restricted_dft(delta, omega, table);
        CyclicSignal inside = restricted_idft(coeffs, omega, table);
        CyclicSignal z(n);
        for (std::size_t t = 0; t < n; ++t) z[t] = delta[t] - inside[t];
        consider(z);
    }

    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto rng = make_stream(seed, trial);
        std::vector<cxd> coeffs(complement.cardinality());
        for (cxd& c : coeffs) c = complex_gaussian(rng);
        consider(restricted_idft(coeffs, complement, table));
    }

    report.min_slack = min_slack;
    report.verdict =
        min_slack <= 0.0 ? NullspaceVerdict::violated : NullspaceVerdict::no_violation_found;
    return report;
}

}  // namespace znsparse
