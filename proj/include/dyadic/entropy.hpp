#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dyadic {

inline constexpr double kLog2 = std::numbers::ln2;

/// t log t with 0 log 0 = 0.
inline double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

/// Binary entropy in nats, H(0) = H(1) = 0.
inline double binary_entropy(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("binary_entropy: t must lie in [0,1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    // evaluate on the smaller side so that H(t) and H(1-t) agree bitwise
    const double s = t <= 0.5 ? t : 1.0 - t;
    return -xlogx(s) - xlogx(1.0 - s);
}

inline double nats_to_bits(double h) { return h / kLog2; }

} // namespace dyadic
