#pragma once

#include <cstdint>
#include <random>

#include "znsparse/signal.hpp"

namespace znsparse {

/// Bernoulli frequency selection: each residue enters Ω independently
/// with probability tau.
struct BernoulliConfig {
    std::size_t n = 0;
    double tau = 0.0;     // in (0,1)
    std::uint64_t seed = 0;
};

/// SplitMix64 step; also the seed mixer for derived streams.
std::uint64_t splitmix64(std::uint64_t& state);

/// Independent generator for (master seed, stream index). Streams derived
/// for distinct indices are decorrelated, so trials can run in parallel
/// with results that depend only on the master seed.
std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Canonical double in [0,1) from the top 53 bits. uniform_real_distribution
/// is implementation-defined; this keeps draws identical across toolchains.
double uniform01(std::mt19937_64& rng);

/// Unbiased draw from {0, ..., bound-1} by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Standard complex Gaussian (unit variance per component).
cxd complex_gaussian(std::mt19937_64& rng);

FrequencySet sample_omega(const BernoulliConfig& config);

/// Uniform over subsets of fixed cardinality (partial Fisher-Yates).
FrequencySet sample_omega_fixed_size(std::size_t n, std::size_t size, std::uint64_t seed);

/// Uniform support of given size together with unit-variance complex
/// Gaussian amplitudes, for randomized recovery trials.
SupportSet sample_support(std::size_t n, std::size_t size, std::mt19937_64& rng);
std::vector<cxd> sample_amplitudes(std::size_t count, std::mt19937_64& rng);
std::vector<cxd> sample_unimodular(std::size_t count, std::mt19937_64& rng);

}  // namespace znsparse
