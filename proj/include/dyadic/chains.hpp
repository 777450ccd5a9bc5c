#pragma once
// Dyadic chains {h, 2h, 4h, ...} over odd heads h. The pattern (k, 2k) only
// couples positions on the same chain, so every count and sampler in this
// library is organised chain by chain.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace dyadic {

using Position = std::uint64_t;

struct ChainPosition {
    Position head;       // odd
    unsigned level;      // k = head * 2^level
    friend bool operator==(const ChainPosition&, const ChainPosition&) = default;
};

inline ChainPosition chain_head(Position k) {
    if (k == 0) throw std::invalid_argument("chain_head: position must be >= 1");
    const auto level = static_cast<unsigned>(std::countr_zero(k));
    return {k >> level, level};
}

/// Positions head, 2*head, ... <= n in increasing order.
inline std::vector<Position> chain_positions(Position head, Position n) {
    if (head % 2 == 0) throw std::invalid_argument("chain_positions: head must be odd");
    if (head > n) throw std::invalid_argument("chain_positions: head exceeds n");
    std::vector<Position> out;
    for (Position x = head; x <= n; x *= 2) {
        out.push_back(x);
        if (x > n / 2) break;
    }
    return out;
}

/// Length of the chain through `head` truncated at n.
inline unsigned chain_length(Position head, Position n) {
    // floor(log2(n / head)) + 1
    return static_cast<unsigned>(std::bit_width(n / head));
}

/// Partition of {1..n} into dyadic chains, summarised by a histogram
/// chain length -> number of chains of that length.
struct ChainDecomposition {
    Position n = 0;
    std::map<unsigned, std::uint64_t> histogram;

    std::uint64_t chain_count() const {
        std::uint64_t c = 0;
        for (const auto& [len, mult] : histogram) c += mult;
        return c;
    }
    std::uint64_t total_positions() const {
        std::uint64_t c = 0;
        for (const auto& [len, mult] : histogram) c += len * mult;
        return c;
    }
    std::uint64_t multiplicity(unsigned length) const {
        auto it = histogram.find(length);
        return it == histogram.end() ? 0 : it->second;
    }
    unsigned max_length() const { return histogram.empty() ? 0 : histogram.rbegin()->first; }
};

namespace detail {
// number of odd integers in [1, x]
constexpr std::uint64_t odd_count(std::uint64_t x) { return (x + 1) / 2; }
} // namespace detail

/// Chains of length l have heads in (n/2^l, n/2^(l-1)]; the histogram is
/// computed by counting odd integers in those intervals, so n may be huge.
inline ChainDecomposition decompose(Position n) {
    if (n == 0) throw std::invalid_argument("decompose: n must be >= 1");
    ChainDecomposition d;
    d.n = n;
    const unsigned max_len = static_cast<unsigned>(std::bit_width(n));
    for (unsigned len = 1; len <= max_len; ++len) {
        const std::uint64_t upper = n >> (len - 1);
        const std::uint64_t lower = len < 64 ? (n >> len) : 0;
        const std::uint64_t mult = detail::odd_count(upper) - detail::odd_count(lower);
        if (mult > 0) d.histogram[len] = mult;
    }
    return d;
}

/// Chains in increasing head order as (head, length) pairs. Intended for
/// moderate n where materialising every chain is affordable.
inline std::vector<std::pair<Position, unsigned>> enumerate_chains(Position n) {
    std::vector<std::pair<Position, unsigned>> out;
    out.reserve((n + 1) / 2);
    for (Position h = 1; h <= n; h += 2) out.emplace_back(h, chain_length(h, n));
    return out;
}

} // namespace dyadic
