#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dyadic/diagnostics.hpp"
#include "dyadic/measure.hpp"
#include "dyadic/word.hpp"

using namespace dyadic;

namespace {

constexpr double ln2 = std::numbers::ln2;

double H(double t) { return t <= 0 || t >= 1 ? 0.0 : -t * std::log(t) - (1 - t) * std::log(1 - t); }

Word word_from_bits(std::uint64_t bits, unsigned n) {
    Word w(n);
    for (unsigned k = 1; k <= n; ++k) w.set(k, (bits >> (k - 1)) & 1);
    return w;
}

std::vector<MeasureParams> param_zoo() {
    return {uniform_params(),          from_alpha(0.0),          from_alpha(0.1), from_alpha(0.5),
            from_theta_alpha(0.4, 0.1), make_params(0.3, 0.7, 0.2), make_params(0.9, 0.05, 0.6),
            make_params(0.0, 1.0, 0.0)};
}

}  // namespace

TEST(Params, FromAlphaExamples) {
    const auto u = from_alpha(0.25);
    for (double v : {u.p0, u.p1, u.p00, u.p01, u.p10, u.p11}) EXPECT_DOUBLE_EQ(v, 0.5);
    const auto a0 = from_alpha(0.0);
    EXPECT_EQ(a0.p11, 0.0);
    EXPECT_EQ(a0.p01, 1.0);
    const auto ah = from_alpha(0.5);
    EXPECT_EQ(ah.p11, 1.0);
    EXPECT_EQ(ah.p01, 0.0);
    EXPECT_THROW(from_alpha(0.51), EmptyLevelSet);
    EXPECT_THROW(from_alpha(-0.1), std::invalid_argument);
}

TEST(Params, FromThetaAlphaExamples) {
    const auto m = from_theta_alpha(0.5, 0.0);
    EXPECT_NEAR(m.p01, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.p1, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(m.p11, 0.0);
    EXPECT_DOUBLE_EQ(from_theta_alpha(0.3, 0.3).p11, 1.0);
    EXPECT_DOUBLE_EQ(from_theta_alpha((2 + 0.2) / 3, 0.2).p01, 1.0);
    EXPECT_THROW(from_theta_alpha(0.7, 0.0), EmptyLevelSet);
    EXPECT_THROW(from_theta_alpha(0.1, 0.2), EmptyLevelSet);
    // the (0, 0) corner is the point mass on the all-zeros sequence
    const auto z = from_theta_alpha(0.0, 0.0);
    EXPECT_EQ(z.p1, 0.0);
    EXPECT_EQ(z.p01, 0.0);
    EXPECT_EQ(local_entropy(z), 0.0);
    EXPECT_EQ(count_ones(sample(z, 1000, 3)), 0u);
}

TEST(Params, Validation) {
    EXPECT_THROW(validate(MeasureParams{0.5, 0.6, 0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(make_params(1.2, 0.5, 0.5), std::invalid_argument);
    EXPECT_NO_THROW(make_params(1.0, 0.0, 1.0));
}

TEST(Xi, Examples) {
    for (double a : {0.0, 0.1, 0.25, 0.4, 0.5}) EXPECT_NEAR(xi(from_alpha(a)), 0.5, 1e-15);
    for (double t : {0.2, 0.4, 0.6})
        for (double a : {0.0, 0.1, 0.2})
            if (t >= a && t <= (2 + a) / 3) { EXPECT_NEAR(xi(from_theta_alpha(t, a)), t, 1e-14); }
    EXPECT_DOUBLE_EQ(xi(uniform_params()), 0.5);
}

TEST(ExpectedPairFreq, Examples) {
    for (double a : {0.0, 0.1, 0.3, 0.5}) EXPECT_NEAR(expected_pair_freq(from_alpha(a)), a, 1e-15);
    EXPECT_NEAR(expected_pair_freq(from_theta_alpha(0.4, 0.1)), 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(expected_pair_freq(uniform_params()), 0.25);
}

TEST(LocalEntropy, Examples) {
    for (double a : {0.0, 0.05, 0.2, 0.25, 0.45, 0.5})
        EXPECT_NEAR(local_entropy(from_alpha(a)), 0.5 * ln2 + 0.5 * H(2 * a), 1e-14);
    for (double t : {0.2, 0.4, 0.6})
        for (double a : {0.0, 0.1, 0.2}) {
            if (t < a || t > (2 + a) / 3) continue;
            const double ref = (1 - t / 2) * H((2 * t - a) / (2 - t)) + (t / 2) * H((t - a) / t);
            EXPECT_NEAR(local_entropy(from_theta_alpha(t, a)), ref, 1e-14);
        }
    EXPECT_NEAR(local_entropy(uniform_params()), ln2, 1e-15);
}

TEST(Cylinder, Examples) {
    const auto u = uniform_params();
    for (unsigned n : {1u, 5u, 16u}) EXPECT_NEAR(cylinder_prob(u, Word(n, 1)), std::ldexp(1.0, -int(n)), 1e-18);
    for (double a : {0.0, 0.1, 0.4}) EXPECT_NEAR(cylinder_prob(from_alpha(a), Word::from_string("11")), a, 1e-16);
}

TEST(Cylinder, NormalisationAndAdditivity) {
    for (const auto& m : param_zoo()) {
        for (unsigned n = 1; n <= 12; ++n) {
            double total = 0;
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                const Word w = word_from_bits(b, n);
                const double p = cylinder_prob(m, w);
                total += p;
                if (n < 12) {
                    Word w0 = w, w1 = w;
                    w0.push_back(0);
                    w1.push_back(1);
                    ASSERT_NEAR(p, cylinder_prob(m, w0) + cylinder_prob(m, w1), 1e-12);
                }
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(Cylinder, LogAgreesWithProduct) {
    const auto m = make_params(0.3, 0.7, 0.2);
    const Word w = sample(m, 200, 11);
    EXPECT_NEAR(log_cylinder_prob(m, w), std::log(cylinder_prob(m, w)), 1e-9);
}

TEST(Marginal, RecursionAgainstCylinderSums) {
    for (const auto& m : param_zoo()) {
        const unsigned n = 12;
        std::vector<double> marg(n + 1, 0.0);
        for (std::uint64_t b = 0; b < (1u << n); ++b) {
            const double p = cylinder_prob(m, word_from_bits(b, n));
            for (unsigned k = 1; k <= n; ++k)
                if ((b >> (k - 1)) & 1) marg[k] += p;
        }
        for (unsigned k = 1; k <= n; ++k) EXPECT_NEAR(position_marginal(m, k), marg[k], 1e-12) << k;
        for (unsigned k = 1; 2 * k <= n; ++k)
            EXPECT_NEAR(marg[2 * k], marg[k] * m.p11 + (1 - marg[k]) * m.p01, 1e-12);
    }
}

TEST(Sample, SupportExamples) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Word a = sample(from_alpha(0.0), 5000, s);
        EXPECT_EQ(count_pairs11(a), 0u);
        const Word b = sample(from_alpha(0.5), 5000, s);
        for (Position k = 1; 2 * k <= b.size(); ++k) ASSERT_EQ(b[k], b[2 * k]);
    }
}

TEST(Sample, UniformDigitFrequency) {
    const std::size_t n = 1000000;
    const Word w = sample(uniform_params(), n, 2024);
    const double sigma = 0.5 / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(digit_frequency(w), 0.5, 3 * sigma);
}

TEST(Sample, DeterministicAndPrefixStable) {
    const auto m = make_params(0.3, 0.7, 0.2);
    EXPECT_EQ(sample(m, 777, 5), sample(m, 777, 5));
    EXPECT_NE(sample(m, 777, 5), sample(m, 777, 6));
    const Word big = sample(m, 4096, 9);
    for (std::size_t n : {1u, 2u, 3u, 100u, 2048u, 4095u}) EXPECT_EQ(sample(m, n, 9), big.prefix(n)) << n;
}

TEST(Sample, CylinderFrequenciesMatch) {
    // 10^6 draws of length 8; every prefix of length <= 8 is checked to 4 sigma
    for (const auto& m : {make_params(0.3, 0.7, 0.2), from_alpha(0.2)}) {
        const unsigned L = 8;
        const std::uint64_t draws = 1000000;
        std::vector<std::uint64_t> hits(1u << L, 0);
        for (std::uint64_t s = 0; s < draws; ++s) {
            const Word w = sample(m, L, s);
            std::uint64_t code = 0;
            for (unsigned k = 1; k <= L; ++k) code |= std::uint64_t{w[k]} << (k - 1);
            ++hits[code];
        }
        for (unsigned n = 1; n <= L; ++n)
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                std::uint64_t c = 0;
                for (std::uint64_t rest = 0; rest < (1u << (L - n)); ++rest) c += hits[b | (rest << n)];
                const double p = cylinder_prob(m, word_from_bits(b, n));
                const double sd = std::sqrt(draws * p * (1 - p));
                EXPECT_LE(std::abs(static_cast<double>(c) - draws * p), 4 * sd + 1e-9) << n << ':' << b;
            }
    }
}

TEST(Sample, LawOfLargeNumbers) {
    const std::size_t n = std::size_t{1} << 20;
    for (const auto& m : {from_alpha(0.2), from_theta_alpha(0.4, 0.1), make_params(0.3, 0.6, 0.3)}) {
        const Word w = sample(m, n, 31);
        EXPECT_NEAR(digit_frequency(w), xi(m), 0.01);
        EXPECT_NEAR(pair_frequency(w), expected_pair_freq(m), 0.01);
        EXPECT_NEAR(*empirical_local_entropy(m, w), local_entropy(m), 0.02);
    }
}

TEST(Sample, AlphaMeasureBlocksBalanced) {
    const std::size_t n = std::size_t{1} << 20;
    for (double a : {0.05, 0.2, 0.4}) {
        const Word w = sample(from_alpha(a), n, 77);
        for (unsigned order = 1; order <= 4; ++order)
            EXPECT_LT(max_block_deviation(block_frequencies(w, order)), 0.02) << a << ' ' << order;
    }
}

TEST(EmpiricalLocalEntropy, Examples) {
    const auto u = uniform_params();
    EXPECT_NEAR(*empirical_local_entropy(u, sample(from_alpha(0.1), 999, 1)), ln2, 1e-12);
    // under mu_0 every pair (k, 2k) is 01 or 10 with probability one, so on its
    // support only the odd factors contribute; the all-zeros word is a null cylinder
    for (std::size_t n : {1u, 7u, 1000u, 1001u}) {
        Word w(n);
        for (Position x = 1; x <= n; ++x) w.set(x, chain_head(x).level % 2);
        const double expected = std::ceil(n / 2.0) * ln2 / static_cast<double>(n);
        ASSERT_TRUE(empirical_local_entropy(from_alpha(0.0), w).has_value());
        EXPECT_NEAR(*empirical_local_entropy(from_alpha(0.0), w), expected, 1e-12);
    }
    EXPECT_NEAR(*empirical_local_entropy(from_alpha(0.0), Word(1, 0)), ln2, 1e-15);
    EXPECT_FALSE(empirical_local_entropy(from_alpha(0.0), Word(8, 0)).has_value());
    const Word w = sample(from_alpha(0.2), std::size_t{1} << 20, 4);
    EXPECT_NEAR(*empirical_local_entropy(from_alpha(0.2), w), 0.5 * ln2 + 0.5 * H(0.4), 0.02);
    EXPECT_FALSE(empirical_local_entropy(from_alpha(0.0), Word::from_string("11")).has_value());
}

TEST(HnIncrement, Examples) {
    const auto u = uniform_params();
    for (std::size_t n : {1u, 4u, 50u}) EXPECT_NEAR(h_n_increment(u, Word(2 * n, 1)), -double(n) * ln2, 1e-12);
    const auto g = make_params(0.3, 0.7, 0.2);
    EXPECT_NEAR(h_n_increment(g, Word::from_string("10")), std::log(g.p10), 1e-15);
    EXPECT_THROW(h_n_increment(g, Word::from_string("101")), std::invalid_argument);
    EXPECT_THROW(h_n_increment(from_alpha(0.0), Word::from_string("1111")), std::domain_error);
}

TEST(HnIncrement, TallyDecomposition) {
    const auto m = make_params(0.3, 0.7, 0.2);
    const Word w = sample(m, 2000, 8);
    const auto t = increment_tally(w, 1000);
    const double lp[2] = {std::log(m.p0), std::log(m.p1)};
    double ref = t.odd[0] * lp[0] + t.odd[1] * lp[1];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) ref += t.pair[a][b] * std::log(m.transition(a, b));
    EXPECT_NEAR(h_n_increment(m, w), ref, 1e-9);
}

TEST(HnIncrement, AlphaMeasureRate) {
    const std::size_t n = std::size_t{1} << 18;
    for (double a : {0.1, 0.2, 0.3}) {
        const Word w = sample(from_alpha(a), 2 * n, 12);
        EXPECT_NEAR(2.0 / n * h_n_increment(from_alpha(a), w), -(ln2 + H(2 * a)), 0.02) << a;
    }
}

TEST(Word, Serialisation) {
    const Word w = sample(make_params(0.3, 0.7, 0.2), 1003, 2);
    std::stringstream bin;
    write_binary(bin, w);
    EXPECT_EQ(bin.str().size(), 8u + (1003 + 7) / 8);
    EXPECT_EQ(read_binary(bin), w);
    std::stringstream txt("# header\n0101\n  11\n");
    EXPECT_EQ(read_ascii(txt), Word::from_string("010111"));
    EXPECT_THROW(Word::from_string("012"), std::invalid_argument);
}
