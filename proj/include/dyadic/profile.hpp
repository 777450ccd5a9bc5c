#pragma once
// Joint tallies of binary words of length n by (number of ones, number of
// in-range pairs (k, 2k) with w_k = w_2k = 1). Only pairs with 2k <= n are
// counted.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "chains.hpp"
#include "count_arithmetic.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace dyadic {

/// Largest n for which exact-mode profile matrices are built.
inline constexpr Position kExactProfileLimit = Position{1} << 12;
/// Largest n accepted by the enumeration oracle.
inline constexpr Position kBruteForceLimit = 22;

/// Counts of the 2^L strings of length L by (#ones, #adjacent 11).
class ChainProfile {
public:
    explicit ChainProfile(unsigned length)
        : length_(length), coefficients_((length + 1) * std::size_t{length}) {}

    unsigned length() const { return length_; }

    const BigCount& coefficient(unsigned ones, unsigned pairs) const {
        static const BigCount zero = 0;
        if (ones > length_ || pairs >= length_) return zero;
        return coefficients_[index(ones, pairs)];
    }
    BigCount& coefficient_ref(unsigned ones, unsigned pairs) { return coefficients_[index(ones, pairs)]; }

    struct Term {
        unsigned ones;
        unsigned pairs;
        BigCount weight;
    };
    /// Nonzero coefficients in (ones, pairs) lexicographic order.
    std::vector<Term> terms() const {
        std::vector<Term> out;
        for (unsigned o = 0; o <= length_; ++o)
            for (unsigned p = 0; p < length_; ++p)
                if (!coefficients_[index(o, p)].is_zero()) out.push_back({o, p, coefficients_[index(o, p)]});
        return out;
    }

private:
    std::size_t index(unsigned ones, unsigned pairs) const { return std::size_t{ones} * length_ + pairs; }

    unsigned length_;
    std::vector<BigCount> coefficients_;
};

/// DP over positions with the previous bit as state.
inline ChainProfile chain_profile(unsigned length) {
    if (length == 0) throw std::invalid_argument("chain_profile: length must be >= 1");
    const std::size_t stride = length;  // pairs 0..length-1
    // state[b][ones * stride + pairs]
    std::vector<BigCount> end0((length + 1) * stride), end1((length + 1) * stride);
    end0[0] = 1;
    end1[1 * stride + 0] = 1;
    for (unsigned pos = 2; pos <= length; ++pos) {
        std::vector<BigCount> next0((length + 1) * stride), next1((length + 1) * stride);
        for (unsigned o = 0; o < pos; ++o) {
            for (unsigned p = 0; p + 1 < pos; ++p) {
                const std::size_t i = o * stride + p;
                const BigCount& a = end0[i];
                const BigCount& b = end1[i];
                if (a.is_zero() && b.is_zero()) continue;
                next0[i] += a;
                next0[i] += b;
                next1[(o + 1) * stride + p] += a;
                next1[(o + 1) * stride + p + 1] += b;
            }
        }
        end0 = std::move(next0);
        end1 = std::move(next1);
    }
    ChainProfile profile(length);
    for (unsigned o = 0; o <= length; ++o)
        for (unsigned p = 0; p < length; ++p) {
            BigCount c = end0[o * stride + p] + end1[o * stride + p];
            if (!c.is_zero()) profile.coefficient_ref(o, p) = std::move(c);
        }
    return profile;
}

/// Inclusive integer interval; lo > hi means empty.
struct CountWindow {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    bool empty() const { return lo > hi; }
    bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
};

template <class Arith>
class ProfileMatrix {
public:
    using value_type = typename Arith::value_type;

    ProfileMatrix(Position n, std::size_t max_ones, std::size_t max_pairs)
        : n_(n), rows_(max_ones + 1), cols_(max_pairs + 1), cells_(rows_ * cols_, Arith::zero()) {}

    Position n() const { return n_; }
    CountMode mode() const { return Arith::mode; }
    std::size_t max_ones() const { return rows_ - 1; }
    std::size_t max_pairs() const { return cols_ - 1; }

    value_type at(std::size_t ones, std::size_t pairs) const {
        if (ones >= rows_ || pairs >= cols_) return Arith::zero();
        return cells_[ones * cols_ + pairs];
    }
    value_type& operator()(std::size_t ones, std::size_t pairs) { return cells_[ones * cols_ + pairs]; }
    const value_type& operator()(std::size_t ones, std::size_t pairs) const { return cells_[ones * cols_ + pairs]; }

    /// Sum over the rectangle, reduced in row-major order.
    value_type window_sum(CountWindow ones, CountWindow pairs) const {
        if (ones.empty() || pairs.empty()) return Arith::zero();
        std::vector<value_type> terms;
        const std::size_t o_hi = std::min<std::uint64_t>(ones.hi, rows_ - 1);
        const std::size_t p_hi = std::min<std::uint64_t>(pairs.hi, cols_ - 1);
        for (std::size_t o = ones.lo; o <= o_hi; ++o)
            for (std::size_t p = pairs.lo; p <= p_hi; ++p) {
                const auto& v = (*this)(o, p);
                if (!Arith::is_zero(v)) terms.push_back(v);
            }
        return Arith::sum(terms);
    }
    value_type total() const {
        return window_sum({0, rows_ - 1}, {0, cols_ - 1});
    }

    friend bool operator==(const ProfileMatrix& a, const ProfileMatrix& b) {
        return a.n_ == b.n_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
    }

private:
    Position n_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> cells_;
};

using ExactProfile = ProfileMatrix<ExactArithmetic>;
using LogProfile = ProfileMatrix<LogArithmetic>;

struct ProfileOptions {
    unsigned threads = 1;
};

namespace detail {

template <class Arith>
struct KernelTerm {
    unsigned ones;
    unsigned pairs;
    typename Arith::value_type weight;
};

template <class Arith>
std::vector<KernelTerm<Arith>> chain_kernel(unsigned length) {
    std::vector<KernelTerm<Arith>> out;
    for (const auto& t : chain_profile(length).terms()) {
        out.push_back({t.ones, t.pairs, Arith::from_big(t.weight)});
    }
    return out;
}

/// Multiplies the chain polynomials of every chain of {1..n} together, keeping
/// only cells with ones <= ones_cap and pairs <= pairs_cap and dropping cells
/// that can no longer reach ones >= ones_floor, pairs >= pairs_floor.
/// Equal-length chains share one kernel; groups are applied shortest first.
template <class Arith>
ProfileMatrix<Arith> build_profile(Position n, std::uint64_t ones_cap, std::uint64_t pairs_cap,
                                   std::uint64_t ones_floor, std::uint64_t pairs_floor,
                                   const ProfileOptions& options) {
    using value_type = typename Arith::value_type;
    const ChainDecomposition chains = decompose(n);
    ones_cap = std::min<std::uint64_t>(ones_cap, n);
    pairs_cap = std::min<std::uint64_t>(pairs_cap, n / 2);
    const std::size_t cols = pairs_cap + 1;

    ProfileMatrix<Arith> acc(n, ones_cap, pairs_cap);
    ProfileMatrix<Arith> next(n, ones_cap, pairs_cap);
    acc(0, 0) = Arith::one();

    std::uint64_t reach_ones = 0;   // max ones reachable so far (uncapped)
    std::uint64_t reach_pairs = 0;
    std::uint64_t remaining_ones = n;            // positions in chains not yet applied
    std::uint64_t remaining_pairs = n - chains.chain_count();
    std::size_t prev_lo_o = 0, prev_lo_p = 0;

    for (const auto& [length, mult] : chains.histogram) {
        const auto kernel = chain_kernel<Arith>(length);
        for (std::uint64_t c = 0; c < mult; ++c) {
            const std::size_t prev_hi_o = std::min(reach_ones, ones_cap);
            const std::size_t prev_hi_p = std::min(reach_pairs, pairs_cap);
            reach_ones += length;
            reach_pairs += length - 1;
            remaining_ones -= length;
            remaining_pairs -= length - 1;
            const std::size_t hi_o = std::min(reach_ones, ones_cap);
            const std::size_t hi_p = std::min(reach_pairs, pairs_cap);
            const std::size_t lo_o = ones_floor > remaining_ones ? ones_floor - remaining_ones : 0;
            const std::size_t lo_p = pairs_floor > remaining_pairs ? pairs_floor - remaining_pairs : 0;

            const std::size_t rows = hi_o + 1;
            parallel_for_ranges(rows, options.threads, [&](std::size_t row_begin, std::size_t row_end) {
                std::vector<value_type> gathered;
                gathered.reserve(kernel.size());
                for (std::size_t o = row_begin; o < row_end; ++o) {
                    for (std::size_t p = 0; p <= hi_p; ++p) {
                        if (o < lo_o || p < lo_p) {
                            next(o, p) = Arith::zero();
                            continue;
                        }
                        gathered.clear();
                        value_type total = Arith::zero();
                        for (const auto& t : kernel) {
                            if (t.ones > o || t.pairs > p) continue;
                            const std::size_t so = o - t.ones, sp = p - t.pairs;
                            if (so < prev_lo_o || so > prev_hi_o || sp < prev_lo_p || sp > prev_hi_p) continue;
                            const auto& src = acc(so, sp);
                            if (Arith::is_zero(src)) continue;
                            if constexpr (Arith::accumulates) total += src * t.weight;
                            else gathered.push_back(Arith::mul(src, t.weight));
                        }
                        if constexpr (Arith::accumulates) next(o, p) = std::move(total);
                        else next(o, p) = Arith::sum(gathered);
                    }
                }
            });
            std::swap(acc, next);
            prev_lo_o = lo_o;
            prev_lo_p = lo_p;
        }
    }
    // cells below the floors are stale from earlier passes
    for (std::size_t o = 0; o <= ones_cap; ++o)
        for (std::size_t p = 0; p < cols; ++p)
            if (o < prev_lo_o || p < prev_lo_p) acc(o, p) = Arith::zero();
    return acc;
}

} // namespace detail

/// Full (ones, pairs) tally of {0,1}^n.
template <class Arith>
ProfileMatrix<Arith> profile_matrix(Position n, const ProfileOptions& options = {}) {
    if (n == 0) throw std::invalid_argument("profile_matrix: n must be >= 1");
    if (Arith::mode == CountMode::exact && n > kExactProfileLimit)
        throw CountOverflow("profile_matrix: exact mode supports n <= 4096; switch to log-space");
    if constexpr (std::is_same_v<Arith, LogArithmetic>) {
        if (n <= kExtendedCountBits) {
            const auto ext = detail::build_profile<ExtendedArithmetic>(n, n, n / 2, 0, 0, options);
            LogProfile out(n, ext.max_ones(), ext.max_pairs());
            for (std::size_t o = 0; o <= ext.max_ones(); ++o)
                for (std::size_t p = 0; p <= ext.max_pairs(); ++p) out(o, p) = ExtendedArithmetic::to_log(ext(o, p));
            return out;
        }
    }
    return detail::build_profile<Arith>(n, n, n / 2, 0, 0, options);
}

/// Number of words of length n with ones in `ones` and in-range 11-pairs in
/// `pairs`. Only the cells the window can reach are computed.
template <class Arith>
typename Arith::value_type level_set_count(Position n, CountWindow ones, CountWindow pairs,
                                           const ProfileOptions& options = {}) {
    if (n == 0) throw std::invalid_argument("level_set_count: n must be >= 1");
    if (Arith::mode == CountMode::exact && n > kExactProfileLimit)
        throw CountOverflow("level_set_count: exact mode supports n <= 4096; switch to log-space");
    ones.hi = std::min<std::uint64_t>(ones.hi, n);
    pairs.hi = std::min<std::uint64_t>(pairs.hi, n / 2);
    if (ones.empty() || pairs.empty()) return Arith::zero();
    if constexpr (std::is_same_v<Arith, LogArithmetic>) {
        if (n <= kExtendedCountBits) {
            const auto ext = detail::build_profile<ExtendedArithmetic>(n, ones.hi, pairs.hi, ones.lo, pairs.lo, options);
            return ExtendedArithmetic::to_log(ext.window_sum(ones, pairs));
        }
    }
    const auto m = detail::build_profile<Arith>(n, ones.hi, pairs.hi, ones.lo, pairs.lo, options);
    return m.window_sum(ones, pairs);
}

/// Windows for digit frequency theta +- eps_theta and pair frequency
/// alpha +- eps_alpha, where the pair frequency of a length-n word is
/// (in-range 11-pairs) / floor(n/2).
struct FrequencyWindows {
    CountWindow ones;
    CountWindow pairs;
};

inline FrequencyWindows frequency_windows(Position n, double theta, double eps_theta, double alpha,
                                          double eps_alpha) {
    constexpr double slack = 1e-9;
    auto to_window = [&](double lo, double hi, double scale, std::uint64_t cap) {
        const double a = std::max(0.0, std::ceil(lo * scale - slack));
        const double b = std::floor(hi * scale + slack);
        if (b < 0.0 || a > b) return CountWindow{1, 0};
        return CountWindow{static_cast<std::uint64_t>(a),
                           std::min<std::uint64_t>(static_cast<std::uint64_t>(b), cap)};
    };
    const double half = static_cast<double>(n / 2);
    return {to_window(theta - eps_theta, theta + eps_theta, static_cast<double>(n), n),
            to_window(alpha - eps_alpha, alpha + eps_alpha, half, n / 2)};
}

/// Enumerates all 2^n words. Test oracle; n <= 22.
inline ExactProfile brute_force_profile(Position n) {
    if (n == 0) throw std::invalid_argument("brute_force_profile: n must be >= 1");
    if (n > kBruteForceLimit) throw std::invalid_argument("brute_force_profile: n must be <= 22");
    const std::size_t cols = n / 2 + 1;
    std::vector<std::uint64_t> tally((n + 1) * cols, 0);
    const std::uint64_t words = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < words; ++w) {
        // bit k-1 holds w_k
        std::size_t pairs = 0;
        for (Position k = 1; 2 * k <= n; ++k) pairs += ((w >> (k - 1)) & (w >> (2 * k - 1)) & 1u);
        const auto ones = static_cast<std::size_t>(std::popcount(w));
        ++tally[ones * cols + pairs];
    }
    ExactProfile out(n, n, n / 2);
    for (std::size_t o = 0; o <= n; ++o)
        for (std::size_t p = 0; p < cols; ++p) out(o, p) = tally[o * cols + p];
    return out;
}

} // namespace dyadic
