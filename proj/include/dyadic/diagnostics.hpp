#pragma once
// Finite-scale diagnostics for normality and pair-frequency membership.
//
// R(N, i) = {2^i (2k-1) : k <= 2^(N-i-1)} is the set of positions below 2^N
// with 2-adic valuation i. It splits by magnitude into
//   R(N,i,I)   = R(N-2,i)              positions < 2^(N-2)
//   R(N,i,II)  = R(N-1,i) \ R(N-2,i)   positions in (2^(N-2), 2^(N-1))
//   R(N,i,III) = R(N,i)   \ R(N-1,i)   positions in (2^(N-1), 2^N)

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chains.hpp"
#include "word.hpp"

namespace dyadic {

enum class RPart { I = 0, II = 1, III = 2 };

inline const char* to_string(RPart p) {
    switch (p) {
        case RPart::I: return "I";
        case RPart::II: return "II";
        case RPart::III: return "III";
    }
    return "?";
}

/// R(N, i); empty when i >= N.
inline std::vector<Position> r_set(unsigned N, unsigned i) {
    std::vector<Position> out;
    if (i >= N || N > 62) return out;
    const Position count = Position{1} << (N - i - 1);
    out.reserve(count);
    for (Position k = 1; k <= count; ++k) out.push_back((2 * k - 1) << i);
    return out;
}

inline std::vector<Position> r_set(unsigned N, unsigned i, RPart part) {
    if (N < 3 || i > N - 3) throw std::invalid_argument("r_set: need 0 <= i <= N-3");
    const Position step = Position{1} << (i + 1);
    const Position first = Position{1} << i;
    Position lo = 0, hi = 0;  // positions in [lo, hi)
    switch (part) {
        case RPart::I: lo = 0; hi = Position{1} << (N - 2); break;
        case RPart::II: lo = Position{1} << (N - 2); hi = Position{1} << (N - 1); break;
        case RPart::III: lo = Position{1} << (N - 1); hi = Position{1} << N; break;
    }
    std::vector<Position> out;
    for (Position x = first; x < hi; x += step)
        if (x >= lo) out.push_back(x);
    return out;
}

inline std::size_t r_set_size(unsigned N, unsigned i, RPart part) {
    // |R(M,i)| = 2^(M-i-1)
    auto full = [i](unsigned M) -> std::size_t { return M > i ? std::size_t{1} << (M - i - 1) : 0; };
    switch (part) {
        case RPart::I: return full(N - 2);
        case RPart::II: return full(N - 1) - full(N - 2);
        case RPart::III: return full(N) - full(N - 1);
    }
    return 0;
}

/// Magnitude class of position x < 2^N, or nullopt-like 3 for x >= 2^N.
inline int r_part_of(Position x, unsigned N) {
    const unsigned b = static_cast<unsigned>(std::bit_width(x)) - 1;  // 2^b <= x < 2^(b+1)
    if (b + 2 < N) return 0;
    if (b + 2 == N) return 1;
    if (b + 1 == N) return 2;
    return 3;
}

// ---------------------------------------------------------------------------

/// X^i_{k1k2,*} = #{n in R(N,i-1,*) : w_n = k1, w_2n = k2}, i = 1..m, * in {I, II}
/// X^i_{k1,*}   = #{n in R(N,i,*)   : w_n = k1},          i = 0..m, * in {I, II, III}
struct XTable {
    unsigned N = 0;
    unsigned m = 0;
    std::vector<std::array<std::array<std::uint64_t, 2>, 4>> pair;      // [i][2*k1+k2][part]
    std::vector<std::array<std::array<std::uint64_t, 3>, 2>> marginal;  // [i][k1][part]

    std::uint64_t x(unsigned i, unsigned k1, unsigned k2, RPart part) const {
        return pair.at(i)[2 * k1 + k2].at(static_cast<std::size_t>(part));
    }
    std::uint64_t x(unsigned i, unsigned k1, RPart part) const {
        return marginal.at(i)[k1][static_cast<std::size_t>(part)];
    }
};

/// One pass over a word of length 2^N.
inline XTable x_table(const Word& w, unsigned m) {
    const std::size_t len = w.size();
    if (len == 0 || !std::has_single_bit(len)) throw std::invalid_argument("x_table: word length must be a power of two");
    const unsigned N = static_cast<unsigned>(std::countr_zero(len));
    if (m < 1 || N < 3 || m > N - 3) throw std::invalid_argument("x_table: need 1 <= m <= N-3");
    XTable t;
    t.N = N;
    t.m = m;
    t.pair.assign(m + 1, {});
    t.marginal.assign(m + 1, {});
    for (Position n = 1; n < len; ++n) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(n));
        if (v > m) continue;
        const int part = r_part_of(n, N);
        const auto k1 = w[n];
        ++t.marginal[v][k1][part];
        if (part < 2 && v + 1 <= m) ++t.pair[v + 1][2 * k1 + w[2 * n]][part];
    }
    return t;
}

/// Checks the eight linear relations between the pair and marginal counts.
/// Entry r-1 is true when relation r holds for every i = 1..m.
inline std::array<bool, 8> x_relations(const XTable& t) {
    std::array<bool, 8> ok;
    ok.fill(true);
    using enum RPart;
    for (unsigned i = 1; i <= t.m; ++i) {
        ok[0] = ok[0] && t.x(i, 1, 0, I) + t.x(i, 1, 1, I) == t.x(i - 1, 1, I);
        ok[1] = ok[1] && t.x(i, 0, 0, I) + t.x(i, 0, 1, I) == t.x(i - 1, 0, I);
        ok[2] = ok[2] && t.x(i, 1, 0, II) + t.x(i, 1, 1, II) == t.x(i - 1, 1, II);
        ok[3] = ok[3] && t.x(i, 0, 0, II) + t.x(i, 0, 1, II) == t.x(i - 1, 0, II);
        ok[4] = ok[4] && t.x(i, 0, 1, I) + t.x(i, 1, 1, I) == t.x(i, 1, I) + t.x(i, 1, II);
        ok[5] = ok[5] && t.x(i, 0, 0, I) + t.x(i, 1, 0, I) == t.x(i, 0, I) + t.x(i, 0, II);
        ok[6] = ok[6] && t.x(i, 0, 1, II) + t.x(i, 1, 1, II) == t.x(i, 1, III);
        ok[7] = ok[7] && t.x(i, 0, 0, II) + t.x(i, 1, 0, II) == t.x(i, 0, III);
    }
    return ok;
}

struct NnormRow {
    unsigned i;
    std::uint64_t gap_I;   // |X^i_{11,I} - X^i_{00,I}|
    std::uint64_t gap_II;  // |X^i_{11,II} - X^i_{00,II}|
    double bound;          // eps 2^(N-1-i)
    bool holds;
};

struct NnormReport {
    std::vector<NnormRow> rows;
    double min_epsilon = 0.0;  // smallest eps for which every bound holds
    bool holds = true;
};

inline NnormReport nnorm_gap(const XTable& t, double epsilon) {
    NnormReport r;
    auto gap = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };
    for (unsigned i = 1; i <= t.m; ++i) {
        const double scale = std::ldexp(1.0, static_cast<int>(t.N) - 1 - static_cast<int>(i));
        NnormRow row{i, gap(t.x(i, 1, 1, RPart::I), t.x(i, 0, 0, RPart::I)),
                     gap(t.x(i, 1, 1, RPart::II), t.x(i, 0, 0, RPart::II)), epsilon * scale, false};
        row.holds = static_cast<double>(row.gap_I) <= row.bound && static_cast<double>(row.gap_II) <= row.bound;
        r.min_epsilon = std::max(r.min_epsilon, static_cast<double>(std::max(row.gap_I, row.gap_II)) / scale);
        r.holds = r.holds && row.holds;
        r.rows.push_back(row);
    }
    return r;
}

// ---------------------------------------------------------------------------

struct BlockCheck {
    unsigned scale;  // n in R(n, i, *)
    unsigned i;
    RPart part;
    std::uint64_t size;
    double frequency;  // of ones
};

struct NormalityReport {
    bool member = true;
    unsigned first_scale = 0;
    unsigned last_scale = 0;  // scales above this are not covered by the word
    std::vector<BlockCheck> violations;
};

/// Finite-scale membership in N(N, m, eps): for every scale n from N up to
/// floor(log2 |w|), every R(n, i, *) with i <= m has a fraction of ones in
/// [1/2 - eps, 1/2 + eps].
inline NormalityReport membership_N(const Word& w, unsigned N, unsigned m, double epsilon) {
    if (N < 3 || m > N - 3) throw std::invalid_argument("membership_N: need m <= N-3");
    if (w.size() < (std::size_t{1} << N)) throw std::invalid_argument("membership_N: word shorter than 2^N");
    const unsigned top = static_cast<unsigned>(std::bit_width(w.size())) - 1;
    // ones and totals by (valuation, magnitude b), positions < 2^top
    std::vector<std::vector<std::uint64_t>> ones(m + 1, std::vector<std::uint64_t>(top, 0));
    std::vector<std::vector<std::uint64_t>> total(m + 1, std::vector<std::uint64_t>(top, 0));
    const Position limit = Position{1} << top;
    for (Position x = 1; x < limit; ++x) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(x));
        if (v > m) continue;
        const unsigned b = static_cast<unsigned>(std::bit_width(x)) - 1;
        ones[v][b] += w[x];
        ++total[v][b];
    }
    NormalityReport rep;
    rep.first_scale = N;
    rep.last_scale = top;
    for (unsigned n = N; n <= top; ++n) {
        for (unsigned i = 0; i <= m; ++i) {
            std::uint64_t o[3] = {0, 0, 0}, t[3] = {0, 0, 0};
            for (unsigned b = 0; b + 2 < n; ++b) {
                o[0] += ones[i][b];
                t[0] += total[i][b];
            }
            o[1] = ones[i][n - 2];
            t[1] = total[i][n - 2];
            o[2] = ones[i][n - 1];
            t[2] = total[i][n - 1];
            for (int part = 0; part < 3; ++part) {
                const double f = static_cast<double>(o[part]) / static_cast<double>(t[part]);
                if (f < 0.5 - epsilon || f > 0.5 + epsilon) {
                    rep.member = false;
                    rep.violations.push_back({n, i, static_cast<RPart>(part), t[part], f});
                }
            }
        }
    }
    return rep;
}

struct PairScale {
    unsigned scale;
    double frequency;  // 2^(-n+1) sum_{j <= 2^(n-1)} w_j w_2j
    bool inside;
};

struct PairMembershipReport {
    bool member = true;
    unsigned first_scale = 0;
    unsigned last_scale = 0;
    std::vector<PairScale> scales;
};

/// Finite-scale membership in A(alpha, N, eps): for every n from N up to
/// floor(log2 |w|), alpha - eps < 2^(-n+1) sum_{j <= 2^(n-1)} w_j w_2j < alpha + eps.
inline PairMembershipReport membership_A(const Word& w, double alpha, unsigned N, double epsilon) {
    if (N < 1) throw std::invalid_argument("membership_A: N must be >= 1");
    if (w.size() < (std::size_t{1} << N)) throw std::invalid_argument("membership_A: word shorter than 2^N");
    const unsigned top = static_cast<unsigned>(std::bit_width(w.size())) - 1;
    PairMembershipReport rep;
    rep.first_scale = N;
    rep.last_scale = top;
    std::uint64_t s = 0;
    Position j = 0;
    for (unsigned n = 1; n <= top; ++n) {
        const Position half = Position{1} << (n - 1);
        for (; j < half; ) {
            ++j;
            s += w[j] & w[2 * j];
        }
        if (n < N) continue;
        const double f = static_cast<double>(s) / static_cast<double>(half);
        const bool inside = alpha - epsilon < f && f < alpha + epsilon;
        rep.member = rep.member && inside;
        rep.scales.push_back({n, f, inside});
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct BlockFrequency {
    std::string block;  // first symbol first
    double frequency;
    double deviation;   // |frequency - 2^-m|
};

/// Frequencies of all 2^m blocks, overlapping (sliding window) by default or
/// over consecutive disjoint blocks.
inline std::vector<BlockFrequency> block_frequencies(const Word& w, unsigned m, bool overlapping = true) {
    if (m < 1 || m > 16) throw std::invalid_argument("block_frequencies: order must lie in [1,16]");
    if (w.size() < m) throw std::invalid_argument("block_frequencies: word shorter than block order");
    const std::size_t blocks = std::size_t{1} << m;
    std::vector<std::uint64_t> counts(blocks, 0);
    std::uint64_t windows = 0;
    const std::size_t mask = blocks - 1;
    if (overlapping) {
        std::size_t code = 0;
        for (std::size_t k = 1; k <= w.size(); ++k) {
            code = ((code << 1) | w[k]) & mask;
            if (k >= m) {
                ++counts[code];
                ++windows;
            }
        }
    } else {
        for (std::size_t start = 1; start + m - 1 <= w.size(); start += m) {
            std::size_t code = 0;
            for (unsigned j = 0; j < m; ++j) code = (code << 1) | w[start + j];
            ++counts[code];
            ++windows;
        }
    }
    const double target = 1.0 / static_cast<double>(blocks);
    std::vector<BlockFrequency> out;
    out.reserve(blocks);
    for (std::size_t code = 0; code < blocks; ++code) {
        std::string label(m, '0');
        for (unsigned j = 0; j < m; ++j)
            if ((code >> (m - 1 - j)) & 1u) label[j] = '1';
        const double f = static_cast<double>(counts[code]) / static_cast<double>(windows);
        out.push_back({std::move(label), f, std::abs(f - target)});
    }
    return out;
}

inline double max_block_deviation(const std::vector<BlockFrequency>& freqs) {
    double d = 0.0;
    for (const auto& b : freqs) d = std::max(d, b.deviation);
    return d;
}

/// w restricted to positions l1 + k l2 for k = 1, 2, ...
inline Word arithmetic_subsequence(const Word& w, std::uint64_t offset, std::uint64_t stride) {
    if (stride < 1) throw std::invalid_argument("arithmetic_subsequence: stride must be >= 1");
    Word out;
    for (Position x = offset + stride; x <= w.size(); x += stride) out.push_back(w[x]);
    return out;
}

} // namespace dyadic
