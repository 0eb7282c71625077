#include "znsparse/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace znsparse {

RootTable::RootTable(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RootTable: group order must be positive");
    roots_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots_[k] = std::polar(1.0, angle);
    }
}

namespace {

// Direct summation with the unitary 1/√N factor. sign = -1 forward, +1 inverse.
CyclicSignal transform(const CyclicSignal& x, int sign) {
    const std::size_t n = x.n();
    if (n == 0) throw std::invalid_argument("transform: empty signal");
    RootTable table(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CyclicSignal out(n);
    for (std::size_t w = 0; w < n; ++w) {
        cxd acc{0.0, 0.0};
        std::size_t k = 0;  // (w*t) mod n, updated incrementally
        for (std::size_t t = 0; t < n; ++t) {
            cxd root = table.root(k);
            if (sign < 0) root = std::conj(root);
            acc += x[t] * root;
            k += w;
            if (k >= n) k -= n;
        }
        out[w] = acc * scale;
    }
    return out;
}

}  // namespace

CyclicSignal dft(const CyclicSignal& x) { return transform(x, -1); }

CyclicSignal idft(const CyclicSignal& xhat) { return transform(xhat, +1); }

std::vector<cxd> restricted_dft(const CyclicSignal& x, const FrequencySet& omega,
                                const RootTable& table) {
    const std::size_t n = x.n();
    if (omega.n() != n || table.n() != n)
        throw std::invalid_argument("restricted_dft: mismatched group orders");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cxd> out(omega.cardinality());
    for (std::size_t i = 0; i < omega.cardinality(); ++i) {
        const std::size_t w = omega.members()[i];
        cxd acc{0.0, 0.0};
        std::size_t k = 0;
        for (std::size_t t = 0; t < n; ++t) {
            acc += x[t] * std::conj(table.root(k));
            k += w;
            if (k >= n) k -= n;
        }
        out[i] = acc * scale;
    }
    return out;
}

CyclicSignal restricted_idft(const std::vector<cxd>& coeffs, const FrequencySet& omega,
                             const RootTable& table) {
    const std::size_t n = omega.n();
    if (table.n() != n)
        throw std::invalid_argument("restricted_idft: mismatched group orders");
    if (coeffs.size() != omega.cardinality())
        throw std::invalid_argument("restricted_idft: coefficient count mismatch");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CyclicSignal out(n);
    for (std::size_t i = 0; i < omega.cardinality(); ++i) {
        const std::size_t w = omega.members()[i];
        const cxd c = coeffs[i];
        std::size_t k = 0;
        for (std::size_t t = 0; t < n; ++t) {
            out[t] += c * table.root(k);
            k += w;
            if (k >= n) k -= n;
        }
    }
    for (std::size_t t = 0; t < n; ++t) out[t] *= scale;
    return out;
}

}  // namespace znsparse
