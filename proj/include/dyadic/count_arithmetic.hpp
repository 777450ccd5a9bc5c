#pragma once
// Counting semirings used by the profile DP: exact arbitrary-precision
// integers, double-precision log-counts, and extended-precision plain counts
// (an internal fast path for log-space results). All reduce terms in the order
// they are given, so results do not depend on scheduling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dyadic {

using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& c) { return c.str(); }

/// Natural log of a nonnegative BigCount, -inf for zero.
inline double log_of(const BigCount& c) {
    if (c.is_zero()) return -std::numeric_limits<double>::infinity();
    const auto bits = boost::multiprecision::msb(c);
    if (bits < 1000) return std::log(c.convert_to<double>());
    // keep the top 64 bits
    const unsigned shift = static_cast<unsigned>(bits) - 63;
    const BigCount top = c >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

enum class CountMode { exact, log_space };

struct ExactArithmetic {
    using value_type = BigCount;
    static constexpr CountMode mode = CountMode::exact;

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static constexpr bool accumulates = true;

    static value_type from_count(std::uint64_t c) { return c; }
    static value_type from_big(const BigCount& c) { return c; }
    static bool is_zero(const value_type& v) { return v.is_zero(); }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type sum(std::span<const value_type> terms) {
        value_type s = 0;
        for (const auto& t : terms) s += t;
        return s;
    }
    static double to_log(const value_type& v) { return log_of(v); }
};

struct LogArithmetic {
    using value_type = double;
    static constexpr CountMode mode = CountMode::log_space;

    static value_type zero() { return -std::numeric_limits<double>::infinity(); }
    static value_type one() { return 0.0; }
    static constexpr bool accumulates = false;

    static value_type from_count(std::uint64_t c) {
        return c == 0 ? zero() : std::log(static_cast<double>(c));
    }
    static value_type from_big(const BigCount& c) { return log_of(c); }
    static bool is_zero(value_type v) { return v == zero(); }
    static value_type add(value_type a, value_type b) {
        if (a < b) std::swap(a, b);
        if (b == zero()) return a;
        return a + std::log1p(std::exp(b - a));
    }
    static value_type mul(value_type a, value_type b) {
        if (a == zero() || b == zero()) return zero();
        return a + b;
    }
    // log-sum-exp, sequential in the given order
    static value_type sum(std::span<const value_type> terms) {
        value_type m = zero();
        for (double t : terms) m = std::max(m, t);
        if (m == zero()) return zero();
        double s = 0.0;
        for (double t : terms) s += std::exp(t - m);
        return m + std::log(s);
    }
    static double to_log(value_type v) { return v; }
};

/// Plain counts in long double. Only valid while every count stays below the
/// largest finite long double, i.e. for words shorter than max_exponent bits.
struct ExtendedArithmetic {
    using value_type = long double;
    static constexpr CountMode mode = CountMode::log_space;
    static constexpr bool accumulates = true;

    static value_type zero() { return 0.0L; }
    static value_type one() { return 1.0L; }
    static value_type from_count(std::uint64_t c) { return static_cast<long double>(c); }
    static value_type from_big(const BigCount& c) { return c.convert_to<long double>(); }
    static bool is_zero(value_type v) { return v == 0.0L; }
    static value_type add(value_type a, value_type b) { return a + b; }
    static value_type mul(value_type a, value_type b) { return a * b; }
    static value_type sum(std::span<const value_type> terms) {
        long double s = 0.0L;
        for (auto t : terms) s += t;
        return s;
    }
    static double to_log(value_type v) {
        return v == 0.0L ? -std::numeric_limits<double>::infinity() : static_cast<double>(std::log(v));
    }
};

/// Largest n for which ExtendedArithmetic cannot overflow (counts <= 2^n).
inline constexpr std::uint64_t kExtendedCountBits =
    std::numeric_limits<long double>::max_exponent > 80
        ? static_cast<std::uint64_t>(std::numeric_limits<long double>::max_exponent) - 64
        : 0;

} // namespace dyadic
