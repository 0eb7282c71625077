#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "support/naive.hpp"
#include "znsparse/fourier.hpp"
#include "znsparse/kernel.hpp"
#include "znsparse/sampling.hpp"

using namespace znsparse;

TEST_CASE("kernel of three consecutive frequencies") {
    // N = 7, Omega = {0,1,2}: the Dirichlet-type kernel with
    // |K(t)| = |sin(3 pi t / 7) / sin(pi t / 7)|.
    FrequencySet omega(7, {0, 1, 2});
    auto k = kernel(omega);
    CHECK(k.k0 == doctest::Approx(3.0).epsilon(1e-14));
    for (std::size_t t = 1; t < 7; ++t) {
        const double x = std::numbers::pi * static_cast<double>(t) / 7.0;
        const double expected = std::abs(std::sin(3.0 * x) / std::sin(x));
        CHECK(std::abs(k.values[t]) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(k.max_off_origin == doctest::Approx(2.246979603717467).epsilon(1e-12));
    CHECK(k.argmax_off_origin == 1);

    // Too coherent even for 1-sparse signals: 2.247 >= 3/2.
    auto iv = check_condition_iv(k, 1);
    CHECK_FALSE(iv.holds);
    CHECK(iv.threshold == doctest::Approx(1.5));
    CHECK(iv.has_witness);
    CHECK(iv.witness == 1);
}

TEST_CASE("kernel of the full and singleton sets") {
    auto full = kernel(FrequencySet::full(9));
    CHECK(full.k0 == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(full.max_off_origin < 1e-12);
    CHECK(check_condition_iv(full, 4).holds);

    // A singleton gives |K| identically 1: the threshold K0/2T = 1/(2T)
    // can never exceed it, so the test fails for every T.
    auto single = kernel(FrequencySet(9, {4}));
    CHECK(single.k0 == doctest::Approx(1.0));
    CHECK(single.max_off_origin == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_FALSE(check_condition_iv(single, 1).holds);

    // Empty set: K vanishes identically and the strict inequality fails.
    auto empty = kernel(FrequencySet(9, {}));
    CHECK(empty.k0 == 0.0);
    CHECK_FALSE(check_condition_iv(empty, 1).holds);
}

TEST_CASE("kernel agrees with independent summation and with the inverse transform") {
    for (std::uint64_t mask : {0x1ULL, 0x13ULL, 0x2aULL, 0x7fULL, 0x55ULL, 0x6dULL}) {
        FrequencySet omega = FrequencySet::from_mask(7, mask & 0x7f);
        auto k = kernel(omega);
        auto oracle = testing::naive_kernel(omega);
        for (std::size_t t = 0; t < 7; ++t) CHECK(std::abs(k.values[t] - oracle[t]) < 1e-12);

        // K is sqrt(N) times the inverse transform of the 0/1 indicator.
        CyclicSignal ind(7);
        for (std::size_t w = 0; w < 7; ++w) ind[w] = cxd{omega.indicator()[w], 0.0};
        auto via_idft = idft(ind);
        for (std::size_t t = 0; t < 7; ++t)
            CHECK(std::abs(k.values[t] - std::sqrt(7.0) * via_idft[t]) < 1e-12);

        // K(-t) is the conjugate of K(t).
        for (std::size_t t = 0; t < 7; ++t)
            CHECK(std::abs(k.values[mod_reduce(-static_cast<std::int64_t>(t), 7)] -
                           std::conj(k.values[t])) < 1e-12);
        CHECK(k.k0 == doctest::Approx(static_cast<double>(omega.cardinality())).epsilon(1e-13));
    }
}

TEST_CASE("coherence test is monotone in the sparsity") {
    // Passing at T implies passing at every smaller sparsity.
    auto rng = make_stream(11, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 6 + uniform_below(rng, 10);
        const std::uint64_t mask = 1 + uniform_below(rng, (std::uint64_t{1} << n) - 1);
        auto k = kernel(FrequencySet::from_mask(n, mask));
        bool prev = check_condition_iv(k, 1).holds;
        for (std::size_t t = 2; t <= 4; ++t) {
            const bool cur = check_condition_iv(k, t).holds;
            if (cur) CHECK(prev);
            prev = cur;
        }
    }
}

TEST_CASE("boundary guard") {
    // Values within a relative 1e-12 band of the threshold are failures,
    // on both sides of it.
    IdempotentKernel k;
    k.values.assign(4, cxd{0, 0});
    k.k0 = 2.0;
    k.max_off_origin = 1.0;  // threshold for T = 1 is exactly 1.0
    k.argmax_off_origin = 1;
    auto at = [&](double m) {
        k.max_off_origin = m;
        return check_condition_iv(k, 1);
    };
    CHECK_FALSE(at(1.0).holds);
    CHECK(at(1.0).boundary);
    CHECK_FALSE(at(1.0 - 5e-13).holds);
    CHECK(at(1.0 - 5e-13).boundary);
    CHECK_FALSE(at(1.0 + 5e-13).holds);
    CHECK(at(1.0 - 1e-6).holds);
    CHECK_FALSE(at(1.0 - 1e-6).boundary);
    CHECK_FALSE(at(1.0 + 1e-6).holds);
    CHECK_THROWS_AS(check_condition_iv(k, 0), std::invalid_argument);
}

TEST_CASE("cardinality lower bound") {
    CHECK(cardinality_lower_bound(1001, 2) == doctest::Approx(16016.0 / 1016.0).epsilon(1e-15));
    CHECK(std::ceil(cardinality_lower_bound(1001, 2)) == 16.0);
    CHECK(cardinality_lower_bound(1, 1) == doctest::Approx(1.0));
    // Large N: approaches 4T^2 from below.
    CHECK(cardinality_lower_bound(1000000, 3) < 36.0);
    CHECK(cardinality_lower_bound(1000000, 3) > 35.9);
    CHECK_THROWS_AS(cardinality_lower_bound(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(cardinality_lower_bound(5, 0), std::invalid_argument);
}

TEST_CASE("interpolant from the constant kernel") {
    // Omega = {0} makes K identically 1, so p is the constant sum of the
    // signs: both margins blow up and the certificate test fails.
    auto k = kernel(FrequencySet(5, {0}));
    SupportSet support(5, {0, 1});
    std::vector<cxd> lambda{cxd{1, 0}, cxd{1, 0}};
    auto cert = build_certificate(k, support, lambda);
    for (std::size_t t = 0; t < 5; ++t) CHECK(std::abs(cert.p[t] - cxd{2, 0}) < 1e-13);
    CHECK(cert.on_margin == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cert.off_margin == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_FALSE(check_condition_iii(cert));
}

TEST_CASE("interpolant from the full spectrum") {
    // Omega = Z_N gives K = N delta_0, so p matches lambda exactly on S and
    // vanishes elsewhere.
    auto k = kernel(FrequencySet::full(8));
    SupportSet support(8, {2, 5});
    std::vector<cxd> lambda{std::polar(1.0, 0.3), std::polar(1.0, -1.2)};
    auto cert = build_certificate(k, support, lambda);
    CHECK(cert.on_margin < 1e-12);
    CHECK(cert.off_margin < 1e-12);
    CHECK(check_condition_iii(cert));
    CHECK(std::abs(cert.p[2] - lambda[0]) < 1e-12);
    CHECK(std::abs(cert.p[5] - lambda[1]) < 1e-12);
    CHECK(std::abs(cert.p[0]) < 1e-12);
}

TEST_CASE("certificate input validation") {
    auto k = kernel(FrequencySet(6, {0, 2}));
    CHECK_THROWS_AS(build_certificate(k, SupportSet(5, {0}), {cxd{1, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_certificate(k, SupportSet(6, {0, 1}), {cxd{1, 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_certificate(k, SupportSet(6, {0}), {cxd{0.5, 0}}),
                    std::invalid_argument);
    auto empty = kernel(FrequencySet(6, {}));
    CHECK_THROWS_AS(build_certificate(empty, SupportSet(6, {0}), {cxd{1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("coherence condition forces good margins") {
    // Whenever the coherence test passes for T, every support of size <= T
    // with unimodular signs yields margins below the analytic envelopes
    // (s-1) r and s r with r = max|K| / K(0), hence below 1/2.
    auto rng = make_stream(23, 0);
    int seen = 0;
    for (int rep = 0; rep < 2000 && seen < 40; ++rep) {
        const std::size_t n = 8 + uniform_below(rng, 12);
        const std::uint64_t mask = 1 + uniform_below(rng, (std::uint64_t{1} << n) - 1);
        auto k = kernel(FrequencySet::from_mask(n, mask));
        const std::size_t t_sparsity = 1 + uniform_below(rng, 2);
        if (!check_condition_iv(k, t_sparsity).holds) continue;
        ++seen;
        const double r = k.max_off_origin / k.k0;
        const std::size_t s = 1 + uniform_below(rng, t_sparsity);
        auto support = sample_support(n, s, rng);
        auto lambda = sample_unimodular(s, rng);
        auto cert = build_certificate(k, support, lambda);
        CHECK(check_condition_iii(cert));
        CHECK(cert.on_margin <= static_cast<double>(s - 1) * r + 1e-9);
        CHECK(cert.off_margin <= static_cast<double>(s) * r + 1e-9);
    }
    CHECK(seen >= 40);
}
