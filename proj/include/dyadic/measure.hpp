#pragma once
// Telescopic measures on {0,1}^N: odd positions are independent with
// P(w_k = 1) = p1, and w_2k depends on w_k only, through the transition row
// (p_{i0}, p_{i1}). Positions on different dyadic chains are independent.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "chains.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "word.hpp"

namespace dyadic {

struct MeasureParams {
    double p0 = 0.5, p1 = 0.5;     // marginal at odd positions
    double p00 = 0.5, p01 = 0.5;   // row for w_k = 0
    double p10 = 0.5, p11 = 0.5;   // row for w_k = 1

    /// Probability of moving from value `from` at k to value `to` at 2k.
    double transition(std::uint8_t from, std::uint8_t to) const {
        return from ? (to ? p11 : p10) : (to ? p01 : p00);
    }

    friend bool operator==(const MeasureParams&, const MeasureParams&) = default;
};

inline constexpr double kProbabilityTolerance = 1e-12;

inline void validate(const MeasureParams& m) {
    const std::array<double, 6> all{m.p0, m.p1, m.p00, m.p01, m.p10, m.p11};
    for (double v : all)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("MeasureParams: probabilities must lie in [0,1]");
    if (std::abs(m.p0 + m.p1 - 1.0) > kProbabilityTolerance ||
        std::abs(m.p00 + m.p01 - 1.0) > kProbabilityTolerance ||
        std::abs(m.p10 + m.p11 - 1.0) > kProbabilityTolerance)
        throw std::invalid_argument("MeasureParams: each distribution must sum to 1");
    if (std::abs(m.p01 - m.p11) == 2.0) throw std::invalid_argument("MeasureParams: trivial transition data");
}

/// Builds from the three free parameters (p1, p01, p11).
inline MeasureParams make_params(double p1, double p01, double p11) {
    MeasureParams m{1.0 - p1, p1, 1.0 - p01, p01, 1.0 - p11, p11};
    validate(m);
    return m;
}

inline MeasureParams uniform_params() { return make_params(0.5, 0.5, 0.5); }

/// mu_alpha: fair coins at odd positions, P(w_2k = w_k) = 2 alpha.
/// Supported on normal sequences with pair frequency alpha.
inline MeasureParams from_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("from_alpha: alpha must be >= 0");
    if (alpha > 0.5) throw EmptyLevelSet("from_alpha: no normal sequence has pair frequency above 1/2");
    const double a = 2.0 * alpha;
    return MeasureParams{0.5, 0.5, a, 1.0 - a, 1.0 - a, a};
}

/// mu_{p,q}: (p0, p1) = (1-p, p), rows (1-p, p) and (1-q, q).
inline MeasureParams from_pq(double p, double q) { return make_params(p, p, q); }

struct ThetaAlphaRoots {
    double p;
    double q;
};

/// p = (2 theta - alpha)/(2 - theta), q = alpha/theta on the admissible range
/// alpha <= theta <= (2 + alpha)/3. (theta, alpha) = (0, 0) yields the point
/// mass on the all-zeros sequence (p = q = 0).
inline ThetaAlphaRoots theta_alpha_roots(double theta, double alpha) {
    constexpr double tol = 1e-12;
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("theta_alpha_roots: alpha must lie in [0,1]");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta_alpha_roots: theta must lie in [0,1]");
    if (theta < alpha - tol || theta > (2.0 + alpha) / 3.0 + tol)
        throw EmptyLevelSet("theta_alpha_roots: theta outside [alpha, (2+alpha)/3], the level set is empty");
    if (theta == 0.0) return {0.0, 0.0};
    auto clamp01 = [](double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); };
    return {clamp01((2.0 * theta - alpha) / (2.0 - theta)), clamp01(alpha / theta)};
}

inline MeasureParams from_theta_alpha(double theta, double alpha) {
    const auto r = theta_alpha_roots(theta, alpha);
    return from_pq(r.p, r.q);
}

/// Almost-sure digit frequency (p1 + p01)/(2 - p11 + p01).
inline double xi(const MeasureParams& m) { return (m.p1 + m.p01) / (2.0 - m.p11 + m.p01); }

/// Almost-sure frequency of 11 at (k, 2k).
inline double expected_pair_freq(const MeasureParams& m) { return xi(m) * m.p11; }

/// Local entropy of mu at typical points, in nats.
inline double local_entropy(const MeasureParams& m) {
    const double x = xi(m);
    return -0.5 * (xlogx(m.p0) + xlogx(m.p1) + (1.0 - x) * (xlogx(m.p00) + xlogx(m.p01)) +
                   x * (xlogx(m.p10) + xlogx(m.p11)));
}

/// mu(w_k = 1), propagated down the chain of k.
inline double position_marginal(const MeasureParams& m, Position k) {
    const auto [head, level] = chain_head(k);
    (void)head;
    double p = m.p1;
    for (unsigned l = 0; l < level; ++l) p = p * m.p11 + (1.0 - p) * m.p01;
    return p;
}

namespace detail {
struct LogParams {
    std::array<double, 2> odd;
    std::array<std::array<double, 2>, 2> pair;
    explicit LogParams(const MeasureParams& m)
        : odd{std::log(m.p0), std::log(m.p1)},
          pair{{{std::log(m.p00), std::log(m.p01)}, {std::log(m.p10), std::log(m.p11)}}} {}
};
} // namespace detail

/// log mu(C_n(w)) over the first n symbols of w; -inf for a null cylinder.
inline double log_cylinder_prob(const MeasureParams& m, const Word& w, std::size_t n) {
    if (n > w.size()) throw std::invalid_argument("log_cylinder_prob: prefix longer than word");
    const detail::LogParams lp(m);
    double s = 0.0;
    for (Position k = 1; k <= n; k += 2) s += lp.odd[w[k]];
    for (Position k = 1; 2 * k <= n; ++k) s += lp.pair[w[k]][w[2 * k]];
    return s;
}
inline double log_cylinder_prob(const MeasureParams& m, const Word& w) {
    return log_cylinder_prob(m, w, w.size());
}

/// mu(C_n(w)) as a direct product.
inline double cylinder_prob(const MeasureParams& m, const Word& w) {
    if (w.empty()) throw std::invalid_argument("cylinder_prob: empty word");
    const std::size_t n = w.size();
    const double odd[2] = {m.p0, m.p1};
    double prob = 1.0;
    for (Position k = 1; k <= n; k += 2) prob *= odd[w[k]];
    for (Position k = 1; 2 * k <= n; ++k) prob *= m.transition(w[k], w[2 * k]);
    return prob;
}

/// -log mu(C_n(w)) / n, or nullopt when the cylinder has zero mass (the
/// local entropy is infinite).
inline std::optional<double> empirical_local_entropy(const MeasureParams& m, const Word& w) {
    if (w.empty()) throw std::invalid_argument("empirical_local_entropy: empty word");
    const double lp = log_cylinder_prob(m, w);
    if (std::isinf(lp)) return std::nullopt;
    return -lp / static_cast<double>(w.size());
}

/// Tallies that make up mu(C_2n)/mu(C_n): odd positions in (n, 2n] by value
/// and pairs (k, 2k) with k in (n/2, n] by value.
struct IncrementTally {
    std::array<std::uint64_t, 2> odd{};
    std::array<std::array<std::uint64_t, 2>, 2> pair{};
};

inline IncrementTally increment_tally(const Word& w, std::size_t n) {
    if (2 * n > w.size()) throw std::invalid_argument("increment_tally: word shorter than 2n");
    IncrementTally t;
    for (Position k = n + 1; k <= 2 * n; ++k)
        if (k % 2 == 1) ++t.odd[w[k]];
    for (Position k = n / 2 + 1; k <= n; ++k) ++t.pair[w[k]][w[2 * k]];
    return t;
}

/// h_n = log mu(C_2n(w)) - log mu(C_n(w)) for a word of even length 2n.
inline double h_n_increment(const MeasureParams& m, const Word& w) {
    if (w.empty() || w.size() % 2 != 0) throw std::invalid_argument("h_n_increment: word length must be even");
    const std::size_t n = w.size() / 2;
    const double lower = log_cylinder_prob(m, w, n);
    if (std::isinf(lower)) throw std::domain_error("h_n_increment: mu(C_n) is zero");
    return log_cylinder_prob(m, w, 2 * n) - lower;
}

inline double digit_frequency(const Word& w) {
    if (w.empty()) throw std::invalid_argument("digit_frequency: empty word");
    return static_cast<double>(count_ones(w)) / static_cast<double>(w.size());
}

/// In-range 11-pairs divided by floor(n/2), the number of in-range pairs.
inline double pair_frequency(const Word& w) {
    if (w.size() < 2) throw std::invalid_argument("pair_frequency: word needs at least 2 symbols");
    return static_cast<double>(count_pairs11(w)) / static_cast<double>(w.size() / 2);
}

namespace detail {
// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent SplitMix64 stream per (seed, chain head).
class ChainStream {
public:
    ChainStream(std::uint64_t seed, Position head) : state_(mix64(mix64(seed) ^ head)) {}
    double uniform() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};
} // namespace detail

/// Draws w_1..w_n chain by chain. Each chain has its own stream derived from
/// (seed, head), so sample(m, n, s) is a prefix of sample(m, n', s) for n' > n.
inline Word sample(const MeasureParams& m, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
    validate(m);
    Word w(n);
    for (Position head = 1; head <= n; head += 2) {
        detail::ChainStream rng(seed, head);
        std::uint8_t prev = rng.uniform() < m.p1 ? 1 : 0;
        w.set(head, prev);
        for (Position x = 2 * head; x <= n; x *= 2) {
            const double p = prev ? m.p11 : m.p01;
            prev = rng.uniform() < p ? 1 : 0;
            w.set(x, prev);
            if (x > n / 2) break;
        }
    }
    return w;
}

} // namespace dyadic
