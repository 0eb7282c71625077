#include "znsparse/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace znsparse {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t state = master_seed;
    std::uint64_t a = splitmix64(state);
    state ^= stream_index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
    std::uint64_t b = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

cxd complex_gaussian(std::mt19937_64& rng) {
    // Box-Muller on the hand-rolled uniforms, for cross-platform determinism.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

FrequencySet sample_omega(const BernoulliConfig& config) {
    if (config.n == 0) throw std::invalid_argument("sample_omega: group order must be positive");
    if (!(config.tau > 0.0 && config.tau < 1.0))
        throw std::invalid_argument("sample_omega: tau must lie in (0,1)");
    auto rng = make_stream(config.seed, 0);
    std::vector<std::int64_t> members;
    for (std::size_t r = 0; r < config.n; ++r)
        if (uniform01(rng) < config.tau) members.push_back(static_cast<std::int64_t>(r));
    return FrequencySet(config.n, members);
}

FrequencySet sample_omega_fixed_size(std::size_t n, std::size_t size, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_omega_fixed_size: group order must be positive");
    if (size > n) throw std::invalid_argument("sample_omega_fixed_size: size exceeds group order");
    auto rng = make_stream(seed, 0);
    std::vector<std::uint32_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    std::vector<std::int64_t> members(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(pool[i], pool[j]);
        members[i] = pool[i];
    }
    return FrequencySet(n, members);
}

SupportSet sample_support(std::size_t n, std::size_t size, std::mt19937_64& rng) {
    if (size > n) throw std::invalid_argument("sample_support: size exceeds group order");
    std::vector<std::uint32_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
    std::vector<std::int64_t> members(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(pool[i], pool[j]);
        members[i] = pool[i];
    }
    return SupportSet(n, members);
}

std::vector<cxd> sample_amplitudes(std::size_t count, std::mt19937_64& rng) {
    std::vector<cxd> out(count);
    for (cxd& v : out) v = complex_gaussian(rng);
    return out;
}

std::vector<cxd> sample_unimodular(std::size_t count, std::mt19937_64& rng) {
    std::vector<cxd> out(count);
    for (cxd& v : out) v = std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng));
    return out;
}

}  // namespace znsparse
