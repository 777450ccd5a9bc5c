#pragma once
// Closed-form counts over the chain histogram, binomial log-asymptotics and
// the cylinder-cover envelope for normal sequences with prescribed pair
// frequency.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "chains.hpp"
#include "count_arithmetic.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "profile.hpp"

namespace dyadic {

/// Fibonacci numbers with F(1) = F(2) = 1; exact up to F(93).
inline std::uint64_t fibonacci(unsigned k) {
    if (k > 93) throw std::invalid_argument("fibonacci: index exceeds 64-bit range");
    std::uint64_t a = 0, b = 1;
    for (unsigned i = 0; i < k; ++i) {
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

/// Words of length n with w_k w_2k = 0 for every 2k <= n. A chain of length
/// l contributes the F(l+2) strings without adjacent ones.
inline BigCount count_A(Position n) {
    if (n == 0) throw std::invalid_argument("count_A: n must be >= 1");
    BigCount total = 1;
    for (const auto& [len, mult] : decompose(n).histogram) {
        if (mult > std::numeric_limits<unsigned>::max()) throw CountOverflow("count_A: n too large for exact count");
        total *= boost::multiprecision::pow(BigCount(fibonacci(len + 2)), static_cast<unsigned>(mult));
    }
    return total;
}

/// Words of length n with w_k = w_2k for every 2k <= n: one free bit per chain.
inline BigCount count_B(Position n) {
    if (n == 0) throw std::invalid_argument("count_B: n must be >= 1");
    return BigCount(1) << static_cast<unsigned>((n + 1) / 2);
}

/// (1/n) log count_A(n), accumulated over the histogram in increasing length.
inline double counting_growth_rate(Position n) {
    if (n == 0) throw std::invalid_argument("counting_growth_rate: n must be >= 1");
    double log_count = 0.0;
    for (const auto& [len, mult] : decompose(n).histogram)
        log_count += static_cast<double>(mult) * std::log(static_cast<double>(fibonacci(len + 2)));
    return log_count / static_cast<double>(n);
}

/// Limit of counting_growth_rate(n): sum over l >= 1 of 2^-(l+1) log F(l+2),
/// truncated after `terms` terms.
inline double counting_growth_limit(unsigned terms = 60) {
    double s = 0.0;
    for (unsigned l = 1; l <= terms; ++l)
        s += std::ldexp(std::log(static_cast<double>(fibonacci(l + 2))), -static_cast<int>(l + 1));
    return s;
}

/// log C(n, k) through log-gamma.
inline double log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("log_binomial: k must not exceed n");
    if (k == 0 || k == n) return 0.0;
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
}

/// Slack constants for the cover envelope. They are deliberately loose and
/// not sharp.
struct CoverSlack {
    double per_epsilon = 8.0;
    double per_depth = 2.0;
};

struct CoverBound {
    double leading;  // 2^(N-1) log 2 + 2^(N-1) H(2 alpha)
    double slack;    // 2^N (C1 eps + C2 2^-m)
    double total() const { return leading + slack; }
};

/// Envelope for the log-number of cylinders of length 2^N needed to cover the
/// sequences whose R-blocks up to depth m are eps-balanced and whose pair
/// frequency is within eps of alpha.
inline CoverBound cover_bound(unsigned N, unsigned m, double epsilon, double alpha, CoverSlack c = {}) {
    if (!(N > m && m >= 1)) throw std::invalid_argument("cover_bound: need N > m >= 1");
    if (N > 62) throw std::invalid_argument("cover_bound: N too large");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("cover_bound: epsilon must lie in (0, 1/2)");
    if (alpha < 0.0) throw std::invalid_argument("cover_bound: alpha must be >= 0");
    if (alpha > 0.5) throw EmptyLevelSet("cover_bound: no normal sequence has pair frequency above 1/2");
    const double half = std::ldexp(1.0, static_cast<int>(N) - 1);
    const double full = std::ldexp(1.0, static_cast<int>(N));
    return {half * kLog2 + half * binary_entropy(2.0 * alpha),
            full * (c.per_epsilon * epsilon + c.per_depth * std::ldexp(1.0, -static_cast<int>(m)))};
}

} // namespace dyadic
