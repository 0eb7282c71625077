#include "znsparse/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "znsparse/fourier.hpp"

namespace znsparse {

IdempotentKernel kernel(const FrequencySet& omega) {
    const std::size_t n = omega.n();
    if (n == 0) throw std::invalid_argument("kernel: group order must be positive");
    RootTable table(n);
    IdempotentKernel k;
    k.omega = omega;
    k.values.assign(n, cxd{0.0, 0.0});
    for (std::uint32_t w : omega.members()) {
        std::size_t idx = 0;  // (w*t) mod n
        for (std::size_t t = 0; t < n; ++t) {
            k.values[t] += table.root(idx);
            idx += w;
            if (idx >= n) idx -= n;
        }
    }
    k.k0 = k.values[0].real();
    k.max_off_origin = 0.0;
    k.argmax_off_origin = 0;
    for (std::size_t t = 1; t < n; ++t) {
        double m = std::abs(k.values[t]);
        if (m > k.max_off_origin) {
            k.max_off_origin = m;
            k.argmax_off_origin = t;
        }
    }
    return k;
}

ConditionIVResult check_condition_iv(const IdempotentKernel& k, std::size_t t_sparsity) {
    if (t_sparsity == 0) throw std::invalid_argument("check_condition_iv: sparsity must be >= 1");
    ConditionIVResult r;
    r.max_off_origin = k.max_off_origin;
    if (k.k0 <= 0.0) {
        // Empty Ω: K ≡ 0 and the strict inequality has no room.
        r.holds = false;
        r.threshold = 0.0;
        return r;
    }
    r.threshold = k.k0 / (2.0 * static_cast<double>(t_sparsity));
    r.boundary = std::abs(r.max_off_origin - r.threshold) <= 1e-12 * r.threshold;
    r.holds = !r.boundary && r.max_off_origin < r.threshold;
    if (!r.holds && k.n() > 1) {
        r.witness = k.argmax_off_origin;
        r.has_witness = true;
    }
    return r;
}

double cardinality_lower_bound(std::size_t n, std::size_t t_sparsity) {
    if (n == 0 || t_sparsity == 0)
        throw std::invalid_argument("cardinality_lower_bound: need N >= 1 and T >= 1");
    const double dn = static_cast<double>(n);
    const double t2 = 4.0 * static_cast<double>(t_sparsity) * static_cast<double>(t_sparsity);
    return t2 * dn / (dn + t2 - 1.0);
}

Certificate build_certificate(const IdempotentKernel& k, const SupportSet& support,
                              const std::vector<cxd>& lambda) {
    const std::size_t n = k.n();
    if (support.n() != n)
        throw std::invalid_argument("build_certificate: mismatched group orders");
    if (k.k0 <= 0.0)
        throw std::invalid_argument("build_certificate: K(0) = 0 (empty frequency set)");
    if (lambda.size() != support.cardinality())
        throw std::invalid_argument("build_certificate: lambda size does not match support");
    for (const cxd& l : lambda)
        if (std::abs(std::abs(l) - 1.0) > 1e-12)
            throw std::invalid_argument("build_certificate: lambda must be unimodular");

    Certificate cert;
    cert.support = support;
    cert.lambda = lambda;
    cert.p = CyclicSignal(n);
    for (std::size_t t = 0; t < n; ++t) {
        cxd acc{0.0, 0.0};
        for (std::size_t i = 0; i < support.cardinality(); ++i) {
            const auto tp = static_cast<std::int64_t>(support.members()[i]);
            acc += lambda[i] * k.values[mod_reduce(static_cast<std::int64_t>(t) - tp, n)];
        }
        cert.p[t] = acc / k.k0;
    }
    cert.on_margin = 0.0;
    cert.off_margin = 0.0;
    for (std::size_t i = 0; i < support.cardinality(); ++i)
        cert.on_margin =
            std::max(cert.on_margin, std::abs(cert.p[support.members()[i]] - lambda[i]));
    for (std::size_t t = 0; t < n; ++t)
        if (!support.contains(t)) cert.off_margin = std::max(cert.off_margin, std::abs(cert.p[t]));
    return cert;
}

bool check_condition_iii(const Certificate& cert) {
    return cert.on_margin < 0.5 && cert.off_margin < 0.5;
}

}  // namespace znsparse
