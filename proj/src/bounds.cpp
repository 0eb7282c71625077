#include "znsparse/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace znsparse {

double BoundParams::a() const {
    if (nu < 2) throw std::invalid_argument("BoundParams: nu must be an integer > 1");
    return std::cos(std::numbers::pi / static_cast<double>(nu));
}

double BoundParams::alpha_prime() const {
    if (mu < 2) throw std::invalid_argument("BoundParams: mu must be an integer > 1");
    return alpha - 2.0 * std::sin(std::numbers::pi / (2.0 * static_cast<double>(mu)));
}

namespace {

double tuned_tau(double n, std::size_t t, double c, double t_power) {
    if (!(n >= 2.0)) throw std::invalid_argument("tune_tau: need N >= 2");
    if (t == 0) throw std::invalid_argument("tune_tau: need T >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("tune_tau: need C > 0");
    const double tau = 4.0 * c * std::pow(static_cast<double>(t), t_power) * std::log(n) / n;
    if (tau >= 1.0)
        throw std::invalid_argument("tune_tau: parameters give tau >= 1, outside the Bernoulli model");
    return tau;
}

}  // namespace

double tune_tau_t2(double n, std::size_t t_sparsity, double c) {
    return tuned_tau(n, t_sparsity, c, 2.0);
}

double tune_tau_t3(double n, std::size_t t_sparsity, double c) {
    return tuned_tau(n, t_sparsity, c, 1.0);
}

double exponent_d(const BoundParams& params) {
    if (params.nu <= 3) throw std::invalid_argument("exponent_d: need nu > 3");
    if (params.t_sparsity == 0) throw std::invalid_argument("exponent_d: need T >= 1");
    const double a = params.a();
    const double a2 = a * a;
    const double t2 = static_cast<double>(params.t_sparsity) * static_cast<double>(params.t_sparsity);
    return params.c * (a2 - a2 * a2 / t2) - 1.0;
}

bool is_pm1_mod6(std::size_t n) {
    const std::size_t r = n % 6;
    return r == 1 || r == 5;
}

BoundValue bound_t2_failure(const BoundParams& params, double tau, bool allow_any_n) {
    if (params.nu <= 3) throw std::invalid_argument("bound_t2_failure: need nu > 3");
    if (params.t_sparsity == 0) throw std::invalid_argument("bound_t2_failure: need T >= 1");
    if (!(params.n >= 1.0)) throw std::invalid_argument("bound_t2_failure: need N >= 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("bound_t2_failure: need tau >= 0");
    const auto n_int = static_cast<std::size_t>(params.n);
    if (!allow_any_n && !(static_cast<double>(n_int) == params.n && is_pm1_mod6(n_int)))
        throw std::invalid_argument(
            "bound_t2_failure: the tail estimate needs N = ±1 mod 6 (2t != 0 and 3t != 0); "
            "pass allow_any_n to evaluate anyway");

    const double a = params.a();
    const double t = static_cast<double>(params.t_sparsity);
    const double a2 = a * a;
    const double exponent = tau * params.n * (-a2 / (4.0 * t * t) + a2 * a2 / (4.0 * t * t * t * t));
    BoundValue out;
    out.raw = params.n * static_cast<double>(params.nu) * std::exp(exponent);
    out.clamped = out.raw > 1.0;
    out.value = out.clamped ? 1.0 : out.raw;
    return out;
}

BoundValue bound_t3_failure(const BoundParams& params) {
    if (params.nu < 2 || params.mu < 2)
        throw std::invalid_argument("bound_t3_failure: mu and nu must be integers > 1");
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        throw std::invalid_argument("bound_t3_failure: need 0 < alpha < 1");
    if (params.t_sparsity == 0) throw std::invalid_argument("bound_t3_failure: need T >= 1");
    if (!(params.n >= 2.0)) throw std::invalid_argument("bound_t3_failure: need N >= 2");
    const double ap = params.alpha_prime();
    if (!(ap > 0.0))
        throw std::invalid_argument("bound_t3_failure: alpha' = alpha - 2 sin(pi/2mu) must be > 0");

    const double a = params.a();
    const double a2 = a * a;
    const double t = static_cast<double>(params.t_sparsity);
    const double mu_t = std::pow(static_cast<double>(params.mu), t);
    const double nu = static_cast<double>(params.nu);
    const double term_on = t * mu_t * nu * std::pow(params.n, -params.c * a2 * ap * ap);
    const double one_minus = 1.0 - params.alpha;
    const double term_off =
        (params.n - t) * mu_t * nu * std::pow(params.n, -params.c * a2 * one_minus * one_minus);
    BoundValue out;
    out.raw = term_on + term_off;
    out.clamped = out.raw > 1.0;
    out.value = out.clamped ? 1.0 : out.raw;
    return out;
}

double corollary_t3_delta_max(double c) {
    if (!(c > 1.0)) throw std::invalid_argument("corollary_t3_delta_max: need C > 1");
    return (c - 1.0) * (c - 1.0) / (4.0 * c);
}

std::size_t crt_reference_size(double n, std::size_t t_sparsity, double delta) {
    if (!(n >= 2.0)) throw std::invalid_argument("crt_reference_size: need N >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("crt_reference_size: need delta > 0");
    const double value = 22.0 * (1.0 + delta) * static_cast<double>(t_sparsity) * std::log(n);
    return static_cast<std::size_t>(std::floor(value));
}

}  // namespace znsparse
