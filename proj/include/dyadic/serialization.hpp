#pragma once
// CSV and JSON forms of profiles, measure parameters, spectrum rows and
// diagnostic reports. Doubles are printed with 17 significant digits.

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diagnostics.hpp"
#include "entropy.hpp"
#include "measure.hpp"
#include "profile.hpp"
#include "spectra.hpp"
#include "word.hpp"

namespace dyadic {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Profile matrices: only nonzero cells are listed.

template <class Arith>
void write_profile_csv(std::ostream& os, const ProfileMatrix<Arith>& m) {
    const bool exact = Arith::mode == CountMode::exact;
    os << (exact ? "ones,pairs,count\n" : "ones,pairs,log_count\n");
    for (std::size_t o = 0; o <= m.max_ones(); ++o)
        for (std::size_t p = 0; p <= m.max_pairs(); ++p) {
            const auto& v = m(o, p);
            if (Arith::is_zero(v)) continue;
            os << o << ',' << p << ',';
            if constexpr (Arith::mode == CountMode::exact) os << to_decimal(v);
            else os << format_double(v);
            os << '\n';
        }
}

template <class Arith>
json profile_to_json(const ProfileMatrix<Arith>& m) {
    const bool exact = Arith::mode == CountMode::exact;
    json entries = json::array();
    for (std::size_t o = 0; o <= m.max_ones(); ++o)
        for (std::size_t p = 0; p <= m.max_pairs(); ++p) {
            const auto& v = m(o, p);
            if (Arith::is_zero(v)) continue;
            json e{{"ones", o}, {"pairs", p}};
            if constexpr (Arith::mode == CountMode::exact) e["count"] = to_decimal(v);
            else e["log_count"] = v;
            entries.push_back(std::move(e));
        }
    return json{{"n", m.n()}, {"mode", exact ? "exact" : "log"}, {"entries", std::move(entries)}};
}

inline ExactProfile exact_profile_from_json(const json& j) {
    if (j.at("mode").get<std::string>() != "exact") throw std::invalid_argument("profile json: expected exact mode");
    const Position n = j.at("n").get<Position>();
    ExactProfile m(n, n, n / 2);
    for (const auto& e : j.at("entries"))
        m(e.at("ones").get<std::size_t>(), e.at("pairs").get<std::size_t>()) =
            BigCount(e.at("count").get<std::string>());
    return m;
}

// ---------------------------------------------------------------------------
// Measure parameters: {"p0","p1","p00","p01","p10","p11"}.

inline json params_to_json(const MeasureParams& m) {
    return json{{"p0", m.p0}, {"p1", m.p1}, {"p00", m.p00}, {"p01", m.p01}, {"p10", m.p10}, {"p11", m.p11}};
}

inline MeasureParams params_from_json(const json& j) {
    MeasureParams m{j.at("p0").get<double>(),  j.at("p1").get<double>(),  j.at("p00").get<double>(),
                    j.at("p01").get<double>(), j.at("p10").get<double>(), j.at("p11").get<double>()};
    validate(m);
    return m;
}

// ---------------------------------------------------------------------------
// Spectrum rows: alpha,theta,entropy_nats,entropy_bits,regime,residual.

inline constexpr const char* kSpectrumCsvHeader = "alpha,theta,entropy_nats,entropy_bits,regime,residual";

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumPoint>& rows) {
    os << kSpectrumCsvHeader << '\n';
    for (const auto& r : rows) {
        os << format_double(r.alpha) << ',' << (r.theta ? format_double(*r.theta) : "") << ','
           << format_double(r.entropy) << ',' << format_double(nats_to_bits(r.entropy)) << ','
           << to_string(r.regime) << ',' << format_double(r.residual) << '\n';
    }
}

inline json spectrum_to_json(const std::vector<SpectrumPoint>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json e{{"alpha", r.alpha}};
        e["theta"] = r.theta ? json(*r.theta) : json(nullptr);
        e["entropy_nats"] = r.entropy;
        e["entropy_bits"] = nats_to_bits(r.entropy);
        e["regime"] = std::string(to_string(r.regime));
        e["residual"] = r.residual;
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Diagnostic reports.

inline json to_json(const XTable& t) {
    json pairs = json::array(), marginals = json::array();
    for (unsigned i = 0; i <= t.m; ++i) {
        json mi;
        for (unsigned k1 = 0; k1 < 2; ++k1)
            for (auto part : {RPart::I, RPart::II, RPart::III})
                mi[std::to_string(k1) + "," + to_string(part)] = t.x(i, k1, part);
        marginals.push_back(json{{"i", i}, {"counts", std::move(mi)}});
        if (i == 0) continue;
        json pi;
        for (unsigned k1 = 0; k1 < 2; ++k1)
            for (unsigned k2 = 0; k2 < 2; ++k2)
                for (auto part : {RPart::I, RPart::II})
                    pi[std::to_string(k1) + std::to_string(k2) + "," + to_string(part)] = t.x(i, k1, k2, part);
        pairs.push_back(json{{"i", i}, {"counts", std::move(pi)}});
    }
    const auto rel = x_relations(t);
    return json{{"N", t.N}, {"m", t.m}, {"pair", std::move(pairs)}, {"marginal", std::move(marginals)},
                {"relations_hold", std::vector<bool>(rel.begin(), rel.end())}};
}

inline json to_json(const NnormReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"i", row.i}, {"gap_I", row.gap_I}, {"gap_II", row.gap_II}, {"bound", row.bound},
                            {"holds", row.holds}});
    return json{{"holds", r.holds}, {"min_epsilon", r.min_epsilon}, {"rows", std::move(rows)}};
}

inline json to_json(const NormalityReport& r) {
    json v = json::array();
    for (const auto& b : r.violations)
        v.push_back(json{{"scale", b.scale}, {"i", b.i}, {"part", to_string(b.part)}, {"size", b.size},
                         {"frequency", b.frequency}});
    return json{{"member", r.member}, {"first_scale", r.first_scale}, {"last_scale", r.last_scale},
                {"violations", std::move(v)}};
}

inline json to_json(const PairMembershipReport& r) {
    json s = json::array();
    for (const auto& p : r.scales) s.push_back(json{{"scale", p.scale}, {"frequency", p.frequency}, {"inside", p.inside}});
    return json{{"member", r.member}, {"first_scale", r.first_scale}, {"last_scale", r.last_scale},
                {"scales", std::move(s)}};
}

inline json to_json(const std::vector<BlockFrequency>& freqs) {
    json out = json::array();
    for (const auto& b : freqs) out.push_back(json{{"block", b.block}, {"frequency", b.frequency}, {"deviation", b.deviation}});
    return out;
}

} // namespace dyadic
