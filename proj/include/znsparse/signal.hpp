#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace znsparse {

using cxd = std::complex<double>;

/// Reduce an integer into the residue range [0, n).
std::size_t mod_reduce(std::int64_t v, std::size_t n);

/// A complex-valued function on Z_N. The same type holds time-domain
/// signals x(t) and spectra x̂(ω); entries are indexed by residues 0..N-1.
class CyclicSignal {
public:
    CyclicSignal() = default;
    explicit CyclicSignal(std::size_t n) : values_(n, cxd{0.0, 0.0}) {}
    CyclicSignal(std::size_t n, std::vector<cxd> values);

    static CyclicSignal impulse(std::size_t n, std::int64_t t, cxd amplitude = {1.0, 0.0});

    std::size_t n() const { return values_.size(); }
    const std::vector<cxd>& values() const { return values_; }
    std::vector<cxd>& values() { return values_; }

    cxd& operator[](std::size_t t) { return values_[t]; }
    const cxd& operator[](std::size_t t) const { return values_[t]; }

    /// Entry at an arbitrary integer index, reduced mod N.
    cxd at_mod(std::int64_t t) const { return values_[mod_reduce(t, n())]; }

    double l1_norm() const;
    double l2_norm() const;
    double linf_norm() const;
    double linf_distance(const CyclicSignal& other) const;
    bool all_finite() const;

private:
    std::vector<cxd> values_;
};

/// A sorted set of distinct residues of Z_N. Serves both as the frequency
/// set Ω and as a time support S; the role is fixed by the parameter name
/// at each call site.
class ResidueSet {
public:
    ResidueSet() = default;

    /// Members are reduced mod n; duplicates after reduction are rejected.
    ResidueSet(std::size_t n, const std::vector<std::int64_t>& members);

    static ResidueSet full(std::size_t n);
    /// Bit i of `mask` selects residue i. Requires n <= 63.
    static ResidueSet from_mask(std::size_t n, std::uint64_t mask);

    std::size_t n() const { return n_; }
    std::size_t cardinality() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<std::uint32_t>& members() const { return members_; }

    bool contains(std::size_t r) const { return flags_[r] != 0; }
    ResidueSet complement() const;

    /// 0/1 vector of length n.
    std::vector<double> indicator() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> members_;
    std::vector<std::uint8_t> flags_;
};

using FrequencySet = ResidueSet;
using SupportSet = ResidueSet;

}  // namespace znsparse
