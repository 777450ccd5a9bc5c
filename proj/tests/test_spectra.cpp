#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dyadic/spectra.hpp"

using namespace dyadic;

namespace {
constexpr double ln2 = std::numbers::ln2;

// Golden-section maximum of a unimodal function, used as an independent oracle.
template <class F>
double golden_max(F f, double lo, double hi) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) > f(d)) b = d;
        else a = c;
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    return f(0.5 * (a + b));
}
double hf(double t, double a) { return h_freq(t, a).entropy; }
}  // namespace

TEST(BinaryEntropy, Values) {
    EXPECT_NEAR(binary_entropy(0.5), ln2, 1e-16);
    EXPECT_NEAR(binary_entropy(0.5), 0.693147, 1e-6);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(2.0 / 3.0), 0.636514, 1e-6);
    for (int k = 0; k <= 1024; ++k) EXPECT_EQ(binary_entropy(k / 1024.0), binary_entropy(1.0 - k / 1024.0));
    EXPECT_THROW(binary_entropy(-0.01), std::invalid_argument);
    EXPECT_THROW(binary_entropy(1.01), std::invalid_argument);
    EXPECT_NEAR(nats_to_bits(ln2), 1.0, 1e-16);
}

TEST(NoAdjacentPairsRoot, Value) {
    const auto r = solve_kps();
    EXPECT_NEAR(r.p, 0.4302, 1e-4);
    EXPECT_LE(std::abs(r.p * r.p - std::pow(1 - r.p, 3)), 1e-12);
    EXPECT_NEAR(-std::log(1 - r.p), 0.562399, 1e-5);
    EXPECT_DOUBLE_EQ(r.entropy, -std::log(1 - r.p));
    EXPECT_LE(r.residual, 1e-12);
}

TEST(Ps, AlphaZeroReducesToKps) {
    const auto r = solve_ps(0.0);
    EXPECT_EQ(r.q, 0.0);
    EXPECT_DOUBLE_EQ(r.p, solve_kps().p);
    EXPECT_NEAR(h_A_alpha(0.0).entropy, 0.562399, 1e-6);
}

TEST(Ps, ResidualsOnGrid) {
    for (double a = 0.0; a < 0.99; a += 0.01) {
        const auto r = solve_ps(a);
        EXPECT_LE(std::abs(r.p * r.p * (1 - r.q) - std::pow(1 - r.p, 3)), 1e-10) << a;
        EXPECT_LE(std::abs(2 * r.p * r.q - a * (2 + r.p - r.q)), 1e-10) << a;
        EXPECT_GE(r.p, 0.0);
        EXPECT_LE(r.p, 1.0);
        EXPECT_GE(r.q, 0.0);
        EXPECT_LE(r.q, 1.0);
    }
    const auto r3 = solve_ps(0.3);
    EXPECT_LE(r3.residual(), 1e-10);
    EXPECT_THROW(solve_ps(1.5), std::invalid_argument);
}

TEST(HA, QuarterIsFullEntropy) {
    EXPECT_NEAR(h_A_alpha(0.25).entropy, ln2, 1e-8);
}

TEST(HA, BoundaryAtOne) {
    const auto pt = h_A_alpha(1.0);
    EXPECT_EQ(pt.regime, Regime::boundary);
    EXPECT_EQ(pt.entropy, 0.0);
    EXPECT_LT(h_A_alpha(0.999).entropy, 0.02);
}

TEST(HA, EqualsMaxOverTheta) {
    for (double a = 0.0; a <= 0.9 + 1e-12; a += 0.05) {
        const double oracle = golden_max([a](double t) { return hf(t, a); }, a, (2 + a) / 3);
        const double h = h_A_alpha(a).entropy;
        EXPECT_GE(h, oracle - 1e-9) << a;
        EXPECT_NEAR(h, oracle, 1e-6) << a;
    }
}

TEST(HA, Range) {
    for (double a = 0.0; a <= 1.0; a += 0.01) {
        const auto pt = h_A_alpha(std::min(a, 1.0));
        EXPECT_GE(pt.entropy, 0.0);
        EXPECT_LE(pt.entropy, ln2 + 1e-12);
        EXPECT_LE(pt.residual, kDefaultTolerance);
    }
}

TEST(HNormal, Examples) {
    EXPECT_NEAR(h_normal_alpha(0.0).entropy, 0.5 * ln2, 1e-15);
    EXPECT_NEAR(h_normal_alpha(0.0).entropy, 0.346574, 1e-6);
    EXPECT_NEAR(h_normal_alpha(0.5).entropy, 0.5 * ln2, 1e-15);
    EXPECT_NEAR(h_normal_alpha(0.25).entropy, ln2, 1e-15);
    EXPECT_EQ(h_normal_alpha(0.6).regime, Regime::empty_set);
}

TEST(HFreq, Examples) {
    const double named = 0.75 * binary_entropy(2.0 / 3.0);
    EXPECT_NEAR(hf(0.5, 0.0), named, 1e-15);
    EXPECT_NEAR(hf(0.5, 0.0), 0.477386, 1e-6);
    EXPECT_GT(named, 0.5 * ln2);
    for (double t : {0.1, 0.3, 0.5})
        EXPECT_NEAR(hf(t, t), (1 - t / 2) * binary_entropy(t / (2 - t)), 1e-14);
    EXPECT_EQ(h_freq(0.7, 0.0).regime, Regime::empty_set);
    EXPECT_EQ(h_freq(0.05, 0.1).regime, Regime::empty_set);
    for (double t = 0.01; t < 2.0 / 3; t += 0.01)
        EXPECT_NEAR(hf(t, 0.0), (2 - t) / 2 * binary_entropy(2 * t / (2 - t)), 1e-14);
}

TEST(HFreq, Concave) {
    for (double a : {0.0, 0.1, 0.3, 0.5, 0.8}) {
        const double lo = a, hi = (2 + a) / 3, step = (hi - lo) / 400;
        for (int i = 1; i < 400; ++i) {
            const double t = lo + i * step;
            const double d2 = hf(t - step, a) - 2 * hf(t, a) + hf(t + step, a);
            EXPECT_LE(d2, 1e-8) << a << ' ' << t;
        }
    }
}

TEST(HFreq, DerivativeMatchesFiniteDifference) {
    for (double a : {0.0, 0.2})
        for (double t : {0.3, 0.4, 0.5}) {
            const double h = 1e-6;
            EXPECT_NEAR(h_freq_dtheta(t, a), (hf(t + h, a) - hf(t - h, a)) / (2 * h), 1e-6);
        }
}

TEST(HFreq, SingleSignChange) {
    for (double a : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        const double lo = a, hi = (2 + a) / 3;
        int changes = 0;
        double prev = 0;
        for (int i = 1; i < 1000; ++i) {
            const double d = h_freq_dtheta(lo + (hi - lo) * i / 1000.0, a);
            if (i > 1 && (d > 0) != (prev > 0)) ++changes;
            prev = d;
        }
        EXPECT_EQ(changes, 1) << a;
    }
}

TEST(MaximisingTheta, AlphaZero) {
    const auto r = solve_corollary_theta(0.0);
    EXPECT_NEAR(r.theta, 0.354, 1e-3);
    const double t = r.theta;
    EXPECT_LE(std::abs(4 * t * t * (2 - t) - std::pow(2 - 3 * t, 3)), 1e-10);
    const double c = theta_star_closed_form();
    EXPECT_NEAR(c, t, 1e-10);
    EXPECT_LE(std::abs(4 * c * c * (2 - c) - std::pow(2 - 3 * c, 3)), 1e-10);
}

TEST(MaximisingTheta, MatchesLevelSetEntropy) {
    for (int i = 0; i <= 10; ++i) {
        const double a = 0.05 * i;
        const auto r = solve_corollary_theta(a);
        EXPECT_LE(r.residual, 1e-12);
        EXPECT_NEAR(hf(r.theta, a), h_A_alpha(a).entropy, 1e-6) << a;
    }
}

TEST(Spectra, SubsetMonotonicity) {
    for (int i = 0; i <= 100; ++i) {
        const double a = 0.005 * i;
        const double hn = h_normal_alpha(a).entropy, hh = hf(0.5, a), ha = h_A_alpha(a).entropy;
        EXPECT_GE(hh - hn, -1e-9) << a;
        EXPECT_GE(ha - hh, -1e-9) << a;
    }
}

TEST(Spectra, Deterministic) {
    for (double a : {0.0, 0.13, 0.77}) {
        EXPECT_EQ(h_A_alpha(a).entropy, h_A_alpha(a).entropy);
        EXPECT_EQ(solve_ps(a).p, solve_ps(a).p);
        EXPECT_EQ(solve_corollary_theta(a).theta, solve_corollary_theta(a).theta);
    }
}

TEST(Grid, Parsing) {
    EXPECT_EQ(parse_grid("0:0.5:0.05").values().size(), 11u);
    EXPECT_EQ(parse_grid("0:1:0.1").values().size(), 11u);
    EXPECT_EQ(parse_grid("0.3").values(), std::vector<double>{0.3});
    EXPECT_TRUE(parse_grid("0.5:0.1:0.1").values().empty());
    EXPECT_THROW(parse_grid("0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_grid("a:b:c"), std::invalid_argument);
    EXPECT_THROW(parse_grid("0:1"), std::invalid_argument);
}

TEST(Scan, Examples) {
    const auto rows = spectrum_scan(Family::normal, {0.0, 0.25, 0.5});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[0].entropy, 0.3466, 1e-4);
    EXPECT_NEAR(rows[1].entropy, 0.6931, 1e-4);
    EXPECT_NEAR(rows[2].entropy, 0.3466, 1e-4);
    EXPECT_TRUE(spectrum_scan(Family::normal, {}).empty());
    const auto high = spectrum_scan(Family::normal, parse_grid("0.4:0.7:0.1").values());
    ASSERT_EQ(high.size(), 4u);
    EXPECT_EQ(high[0].regime, Regime::interior);
    EXPECT_EQ(high[2].regime, Regime::empty_set);
    EXPECT_EQ(high[3].regime, Regime::empty_set);
    const auto fr = spectrum_scan(Family::frequency, {0.0, 0.1}, {0.2, 0.4, 0.9});
    ASSERT_EQ(fr.size(), 6u);
    EXPECT_EQ(fr[2].regime, Regime::empty_set);
    EXPECT_EQ(*fr[4].theta, 0.4);
    EXPECT_THROW(parse_family("bogus"), std::invalid_argument);
}
