#include "znsparse/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace znsparse {

std::size_t mod_reduce(std::int64_t v, std::size_t n) {
    if (n == 0) throw std::invalid_argument("mod_reduce: group order must be positive");
    auto m = static_cast<std::int64_t>(n);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
}

CyclicSignal::CyclicSignal(std::size_t n, std::vector<cxd> values) : values_(std::move(values)) {
    if (values_.size() != n)
        throw std::invalid_argument("CyclicSignal: value count does not match group order");
}

CyclicSignal CyclicSignal::impulse(std::size_t n, std::int64_t t, cxd amplitude) {
    CyclicSignal x(n);
    x.values_[mod_reduce(t, n)] = amplitude;
    return x;
}

double CyclicSignal::l1_norm() const {
    double s = 0.0;
    for (const cxd& v : values_) s += std::abs(v);
    return s;
}

double CyclicSignal::l2_norm() const {
    double s = 0.0;
    for (const cxd& v : values_) s += std::norm(v);
    return std::sqrt(s);
}

double CyclicSignal::linf_norm() const {
    double m = 0.0;
    for (const cxd& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double CyclicSignal::linf_distance(const CyclicSignal& other) const {
    if (other.n() != n())
        throw std::invalid_argument("linf_distance: mismatched group orders");
    double m = 0.0;
    for (std::size_t t = 0; t < n(); ++t) m = std::max(m, std::abs(values_[t] - other.values_[t]));
    return m;
}

bool CyclicSignal::all_finite() const {
    for (const cxd& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ResidueSet::ResidueSet(std::size_t n, const std::vector<std::int64_t>& members)
    : n_(n), flags_(n, 0) {
    if (n == 0) throw std::invalid_argument("ResidueSet: group order must be positive");
    members_.reserve(members.size());
    for (std::int64_t m : members) {
        auto r = static_cast<std::uint32_t>(mod_reduce(m, n));
        if (flags_[r]) throw std::invalid_argument("ResidueSet: duplicate residue after reduction");
        flags_[r] = 1;
        members_.push_back(r);
    }
    std::sort(members_.begin(), members_.end());
}

ResidueSet ResidueSet::full(std::size_t n) {
    if (n == 0) throw std::invalid_argument("ResidueSet: group order must be positive");
    ResidueSet s;
    s.n_ = n;
    s.flags_.assign(n, 1);
    s.members_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.members_[i] = static_cast<std::uint32_t>(i);
    return s;
}

ResidueSet ResidueSet::from_mask(std::size_t n, std::uint64_t mask) {
    if (n == 0 || n > 63) throw std::invalid_argument("ResidueSet::from_mask: need 0 < n <= 63");
    if (n < 64 && (mask >> n) != 0)
        throw std::invalid_argument("ResidueSet::from_mask: mask has bits outside 0..n-1");
    ResidueSet s;
    s.n_ = n;
    s.flags_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) {
            s.flags_[i] = 1;
            s.members_.push_back(static_cast<std::uint32_t>(i));
        }
    }
    return s;
}

ResidueSet ResidueSet::complement() const {
    ResidueSet s;
    s.n_ = n_;
    s.flags_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (!flags_[i]) {
            s.flags_[i] = 1;
            s.members_.push_back(static_cast<std::uint32_t>(i));
        }
    }
    return s;
}

std::vector<double> ResidueSet::indicator() const {
    std::vector<double> ind(n_, 0.0);
    for (std::uint32_t m : members_) ind[m] = 1.0;
    return ind;
}

}  // namespace znsparse
