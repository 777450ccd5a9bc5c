#pragma once
// Entropy spectra of level sets of the multiple ergodic average
// (1/n) sum w_k w_2k, in nats. Every solver brackets its root from
// monotonicity and bisects.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"
#include "measure.hpp"

namespace dyadic {

inline constexpr double kDefaultTolerance = 1e-12;

enum class Regime { interior, boundary, empty_set };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::interior: return "interior";
        case Regime::boundary: return "boundary";
        case Regime::empty_set: return "empty-set";
    }
    return "unknown";
}

struct SpectrumPoint {
    double alpha = 0.0;
    std::optional<double> theta;
    double entropy = 0.0;  // nats; 0 for an empty level set
    double residual = 0.0;
    Regime regime = Regime::interior;
};

struct RootResult {
    double x;
    double residual;  // |f(x)|
    int iterations;
};

/// Bisection for an increasing f with f(lo) < 0 < f(hi). Stops once
/// |f(mid)| <= tol and the bracket cannot shrink further, or f(mid) == 0.
template <class F>
RootResult bisect_increasing(F&& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisect: tolerance must be positive");
    int it = 0;
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    while (it < 2000) {
        ++it;
        if (fm == 0.0) break;
        if (fm < 0.0) lo = mid;
        else hi = mid;
        const double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) break;
        mid = next;
        fm = f(mid);
    }
    if (std::abs(fm) > tol) {
        // the final bracket endpoints may do better than the midpoint
        for (double c : {lo, hi}) {
            const double fc = f(c);
            if (std::abs(fc) < std::abs(fm)) {
                mid = c;
                fm = fc;
            }
        }
    }
    return {mid, std::abs(fm), it};
}

/// Counts sign changes of f over `samples` equally spaced interior points.
template <class F>
int count_sign_changes(F&& f, double lo, double hi, int samples = 64) {
    int changes = 0;
    int prev = 0;
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / samples;
        const double v = f(x);
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

// ---------------------------------------------------------------------------
// Set A: w_k w_2k = 0 for all k.

struct KpsRoot {
    double p;
    double residual;  // |p^2 - (1-p)^3|
    double entropy;   // -log(1-p)
};

/// Root of p^2 = (1-p)^3 on [0,1].
inline KpsRoot solve_kps(double tol = kDefaultTolerance) {
    auto f = [](double p) { return p * p - (1.0 - p) * (1.0 - p) * (1.0 - p); };
    const auto r = bisect_increasing(f, 0.0, 1.0, tol);
    if (r.residual > tol) throw std::runtime_error("solve_kps: tolerance not reached");
    return {r.x, r.residual, -std::log1p(-r.x)};
}

// ---------------------------------------------------------------------------
// Level sets A_alpha.

struct PSRoots {
    double p = 0.0;
    double q = 0.0;
    double residual_cubic = 0.0;   // |p^2(1-q) - (1-p)^3|
    double residual_linear = 0.0;  // |2pq - alpha(2+p-q)|
    double residual() const { return std::max(residual_cubic, residual_linear); }
};

/// q in terms of p from 2pq = alpha(2 + p - q).
inline double ps_q_of_p(double p, double alpha) { return alpha * (2.0 + p) / (2.0 * p + alpha); }

inline PSRoots ps_residuals(double p, double q, double alpha) {
    return {p, q, std::abs(p * p * (1.0 - q) - std::pow(1.0 - p, 3)),
            std::abs(2.0 * p * q - alpha * (2.0 + p - q))};
}

/// Solves p^2(1-q) = (1-p)^3, 2pq = alpha(2+p-q) for alpha in [0,1).
/// After eliminating q the cubic residual is increasing in p on
/// [alpha/(2-alpha), 1], where q stays in [0,1].
inline PSRoots solve_ps(double alpha, double tol = kDefaultTolerance) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("solve_ps: alpha must lie in [0,1]");
    if (alpha == 1.0) return {1.0, 1.0, 0.0, 0.0};
    if (alpha == 0.0) {
        const auto k = solve_kps(tol);
        return ps_residuals(k.p, 0.0, 0.0);
    }
    auto f = [alpha](double p) {
        const double q = ps_q_of_p(p, alpha);
        return p * p * (1.0 - q) - std::pow(1.0 - p, 3);
    };
    const double lo = alpha / (2.0 - alpha);
    if (count_sign_changes(f, lo, 1.0) > 1) throw std::runtime_error("solve_ps: multiple roots bracketed");
    const auto r = bisect_increasing(f, lo, 1.0, tol);
    auto out = ps_residuals(r.x, ps_q_of_p(r.x, alpha), alpha);
    if (out.residual() > tol) throw std::runtime_error("solve_ps: tolerance not reached");
    return out;
}

/// Entropy of A_alpha: -log(1-p) - (alpha/2) log[q(1-p) / (p(1-q))].
inline SpectrumPoint h_A_alpha(double alpha, double tol = kDefaultTolerance) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("h_A_alpha: alpha must lie in [0,1]");
    SpectrumPoint pt;
    pt.alpha = alpha;
    if (alpha == 1.0) {
        // p, q -> 1; the limit of the formula is 0
        pt.entropy = 0.0;
        pt.regime = Regime::boundary;
        return pt;
    }
    const auto r = solve_ps(alpha, tol);
    double correction = 0.0;
    if (alpha > 0.0) correction = 0.5 * alpha * std::log(r.q * (1.0 - r.p) / (r.p * (1.0 - r.q)));
    pt.entropy = -std::log1p(-r.p) - correction;
    pt.residual = r.residual();
    pt.regime = alpha == 0.0 ? Regime::boundary : Regime::interior;
    return pt;
}

// ---------------------------------------------------------------------------
// Normal sequences in A_alpha.

inline SpectrumPoint h_normal_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("h_normal_alpha: alpha must lie in [0,1]");
    SpectrumPoint pt;
    pt.alpha = alpha;
    if (alpha > 0.5) {
        pt.regime = Regime::empty_set;
        return pt;
    }
    pt.entropy = 0.5 * kLog2 + 0.5 * binary_entropy(2.0 * alpha);
    pt.regime = (alpha == 0.0 || alpha == 0.5) ? Regime::boundary : Regime::interior;
    return pt;
}

// ---------------------------------------------------------------------------
// Digit frequency theta together with pair frequency alpha.

inline bool freq_admissible(double theta, double alpha) {
    return theta >= alpha && theta <= (2.0 + alpha) / 3.0;
}

/// (1 - theta/2) H((2theta - alpha)/(2 - theta)) + (theta/2) H((theta - alpha)/theta)
/// on alpha <= theta <= (2+alpha)/3.
inline SpectrumPoint h_freq(double theta, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("h_freq: alpha must lie in [0,1]");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("h_freq: theta must lie in [0,1]");
    SpectrumPoint pt;
    pt.alpha = alpha;
    pt.theta = theta;
    if (!freq_admissible(theta, alpha)) {
        pt.regime = Regime::empty_set;
        return pt;
    }
    const auto r = theta_alpha_roots(theta, alpha);
    // q = alpha/theta, so (theta-alpha)/theta = 1-q and H(1-q) = H(q)
    pt.entropy = (1.0 - 0.5 * theta) * binary_entropy(r.p) + 0.5 * theta * binary_entropy(r.q);
    pt.regime = (theta == alpha || theta == (2.0 + alpha) / 3.0) ? Regime::boundary : Regime::interior;
    return pt;
}

/// d/dtheta of h_freq: (1/2) log[theta(2-3theta+alpha)^3 / ((2theta-alpha)^2 (theta-alpha)(2-theta))].
inline double h_freq_dtheta(double theta, double alpha) {
    const double num = theta * std::pow(2.0 - 3.0 * theta + alpha, 3);
    const double den = std::pow(2.0 * theta - alpha, 2) * (theta - alpha) * (2.0 - theta);
    return 0.5 * std::log(num / den);
}

/// (2theta-alpha)^2 (theta-alpha)(2-theta) - theta(2-3theta+alpha)^3; zero at
/// the maximiser of h_freq(., alpha).
inline double corollary_relation(double theta, double alpha) {
    return std::pow(2.0 * theta - alpha, 2) * (theta - alpha) * (2.0 - theta) -
           theta * std::pow(2.0 - 3.0 * theta + alpha, 3);
}

struct CorollaryRoot {
    double theta;
    double residual;  // |corollary_relation(theta, alpha)|
};

/// Maximiser of theta -> h_freq(theta, alpha) on (alpha, (2+alpha)/3). The
/// derivative is decreasing there, so its sign is bisected; the sign is that of
/// -corollary_relation, which avoids the log near the ends.
inline CorollaryRoot solve_corollary_theta(double alpha, double tol = kDefaultTolerance) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("solve_corollary_theta: alpha must lie in [0,1)");
    const double lo = alpha, hi = (2.0 + alpha) / 3.0;
    auto g = [alpha](double theta) { return corollary_relation(theta, alpha); };
    const auto r = bisect_increasing(g, lo, hi, tol);
    if (r.residual > tol) throw std::runtime_error("solve_corollary_theta: tolerance not reached");
    return {r.x, r.residual};
}

/// The real root of 4 theta^2 (2 - theta) = (2 - 3 theta)^3 by radicals.
inline double theta_star_closed_form() {
    const double s = 3.0 * std::sqrt(69.0);
    const double c = std::cbrt(4.0 / 529.0);  // (2/23)^(2/3)
    return (2.0 / 3.0) * (1.0 + c * std::cbrt(s - 23.0) - c * std::cbrt(s + 23.0));
}

// ---------------------------------------------------------------------------
// Scans.

/// start:stop:step, inclusive of stop within 1e-9.
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        if (!(step > 0.0)) throw std::invalid_argument("Grid: step must be positive");
        std::vector<double> out;
        if (start > stop + 1e-9) return out;
        for (std::int64_t i = 0;; ++i) {
            const double v = start + static_cast<double>(i) * step;
            if (v > stop + 1e-9) break;
            out.push_back(std::min(v, std::max(stop, start)));
        }
        return out;
    }
};

inline Grid parse_grid(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? std::string_view::npos : text.find(':', c1 + 1);
    auto num = [](std::string_view s) {
        std::size_t used = 0;
        const std::string str(s);
        const double v = std::stod(str, &used);
        if (used != str.size()) throw std::invalid_argument("parse_grid: bad number '" + str + "'");
        return v;
    };
    try {
        if (c1 == std::string_view::npos) {
            const double v = num(text);
            return {v, v, 1.0};
        }
        if (c2 == std::string_view::npos) throw std::invalid_argument("parse_grid: expected start:stop:step");
        Grid g{num(text.substr(0, c1)), num(text.substr(c1 + 1, c2 - c1 - 1)), num(text.substr(c2 + 1))};
        if (!(g.step > 0.0)) throw std::invalid_argument("parse_grid: step must be positive");
        return g;
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(std::string("parse_grid: cannot parse '") + std::string(text) + "'");
    }
}

enum class Family { normal, level_set, frequency };

inline Family parse_family(std::string_view s) {
    if (s == "normal") return Family::normal;
    if (s == "A" || s == "A_alpha" || s == "level") return Family::level_set;
    if (s == "freq" || s == "frequency") return Family::frequency;
    throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

/// Evaluates a family over the alpha grid (and theta grid for the frequency
/// family), rows ordered by alpha then theta.
inline std::vector<SpectrumPoint> spectrum_scan(Family family, const std::vector<double>& alphas,
                                                const std::vector<double>& thetas = {},
                                                double tol = kDefaultTolerance) {
    std::vector<SpectrumPoint> rows;
    for (double a : alphas) {
        switch (family) {
            case Family::normal: rows.push_back(h_normal_alpha(a)); break;
            case Family::level_set: rows.push_back(h_A_alpha(a, tol)); break;
            case Family::frequency:
                for (double t : thetas) rows.push_back(h_freq(t, a));
                break;
        }
    }
    return rows;
}

} // namespace dyadic
