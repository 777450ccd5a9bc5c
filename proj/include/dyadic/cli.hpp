#pragma once
// Command-line front end. parse_args() turns argv into a RunConfig and run()
// dispatches it; main_entry() does both and maps failures to exit codes:
//   0 success, 1 internal error, 2 domain violation, 64 usage error.

#include <bit>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "counting.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "parallel.hpp"
#include "profile.hpp"
#include "serialization.hpp"
#include "spectra.hpp"
#include "word.hpp"

namespace dyadic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

enum class Command { spectrum, solve, count, profile, sample, estimate, diagnose };
enum class Format { csv, json };
enum class Units { nats, bits };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::spectrum;
    Format format = Format::csv;
    Units units = Units::nats;
    double tol = kDefaultTolerance;
    unsigned threads = 1;

    // spectrum
    std::string family = "normal";
    std::string alpha_grid = "0:0.5:0.05";
    std::string theta_grid;

    // solve: kps | ps | corollary | theta-star | normal | freq | level
    std::string target;
    std::optional<double> alpha;
    std::optional<double> theta;

    // count / profile
    std::string set = "A";  // A | B | all | window
    std::uint64_t n = 0;
    std::string ones_window;
    std::string pairs_window;
    CountMode mode = CountMode::exact;
    bool rate = false;

    // sample / estimate
    std::string measure = "alpha";  // alpha | theta-alpha | uniform | params
    std::string params_path;
    std::optional<std::uint64_t> seed;
    unsigned repeats = 1;
    std::string word_format = "json";  // json | ascii | binary
    std::string out_path;

    // diagnose
    std::string input_path;
    std::string input_format = "auto";  // auto | json | ascii | binary
    std::optional<unsigned> scale_N;
    std::optional<unsigned> depth_m;
    double epsilon = 0.05;
    unsigned block_order = 3;
    std::optional<std::uint64_t> stride;
    std::uint64_t offset = 0;
};

namespace detail {

inline CountWindow parse_count_window(const std::string& text, std::uint64_t cap) {
    if (text.empty()) return {0, cap};
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto v = std::stoull(text);
            return {v, v};
        }
        return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad window '" + text + "', expected lo:hi");
    }
}

inline double entropy_in(Units u, double nats) { return u == Units::bits ? nats_to_bits(nats) : nats; }

inline void add_entropy(json& j, Units u, double nats) {
    j["entropy_nats"] = nats;
    if (u == Units::bits) j["entropy_bits"] = nats_to_bits(nats);
}

inline void emit(std::ostream& out, Format f, const json& j) {
    if (f == Format::json) {
        out << j.dump(2) << '\n';
        return;
    }
    // flat object -> header row + value row
    std::string header, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += it.key();
        if (it->is_string()) row += it->get<std::string>();
        else if (it->is_number_float()) row += format_double(it->get<double>());
        else row += it->dump();
    }
    out << header << '\n' << row << '\n';
}

inline MeasureParams build_measure(const RunConfig& c) {
    if (c.measure == "alpha") {
        if (!c.alpha) throw UsageError("--alpha is required for measure 'alpha'");
        return from_alpha(*c.alpha);
    }
    if (c.measure == "theta-alpha") {
        if (!c.alpha || !c.theta) throw UsageError("--theta and --alpha are required for measure 'theta-alpha'");
        return from_theta_alpha(*c.theta, *c.alpha);
    }
    if (c.measure == "uniform") return uniform_params();
    if (c.measure == "params") {
        std::ifstream in(c.params_path);
        if (!in) throw UsageError("cannot open params file '" + c.params_path + "'");
        return params_from_json(json::parse(in));
    }
    throw UsageError("unknown measure '" + c.measure + "'");
}

struct LoadedWord {
    Word word;
    std::optional<std::uint64_t> seed;
    std::optional<MeasureParams> params;
};

inline LoadedWord load_word(const RunConfig& c) {
    std::ifstream in(c.input_path, std::ios::binary);
    if (!in) throw UsageError("cannot open input '" + c.input_path + "'");
    std::string fmt = c.input_format;
    if (fmt == "auto") {
        const int first = in.peek();
        if (first == '{') fmt = "json";
        else if (first == '0' || first == '1' || first == '#' || first == '\n') fmt = "ascii";
        else fmt = "binary";
    }
    LoadedWord lw;
    if (fmt == "json") {
        const json j = json::parse(in);
        lw.word = Word::from_string(j.at("word").get<std::string>());
        if (j.contains("seed")) lw.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("measure")) lw.params = params_from_json(j.at("measure"));
    } else if (fmt == "ascii") {
        lw.word = read_ascii(in);
    } else if (fmt == "binary") {
        lw.word = read_binary(in);
    } else {
        throw UsageError("unknown input format '" + fmt + "'");
    }
    return lw;
}

inline json word_statistics(const Word& w, const std::optional<MeasureParams>& params) {
    json j{{"length", w.size()}, {"ones", count_ones(w)}, {"pairs11", count_pairs11(w)},
           {"digit_frequency", digit_frequency(w)}};
    j["pair_frequency"] = w.size() >= 2 ? json(pair_frequency(w)) : json(nullptr);
    if (params) {
        const auto h = empirical_local_entropy(*params, w);
        j["empirical_local_entropy"] = h ? json(*h) : json("infinite");
    }
    return j;
}

inline int run_spectrum(const RunConfig& c, std::ostream& out) {
    const Family fam = parse_family(c.family);
    const auto alphas = parse_grid(c.alpha_grid).values();
    std::vector<double> thetas;
    if (fam == Family::frequency) {
        if (c.theta_grid.empty()) throw UsageError("--theta-grid is required for the freq family");
        thetas = parse_grid(c.theta_grid).values();
    }
    const auto rows = spectrum_scan(fam, alphas, thetas, c.tol);
    if (c.format == Format::json) out << spectrum_to_json(rows).dump(2) << '\n';
    else write_spectrum_csv(out, rows);
    return kExitOk;
}

inline SpectrumPoint require_nonempty(SpectrumPoint pt, const char* what) {
    if (pt.regime == Regime::empty_set) throw EmptyLevelSet(std::string(what) + ": the level set is empty");
    return pt;
}

inline json point_json(const SpectrumPoint& pt, Units u) {
    json j{{"alpha", pt.alpha}};
    if (pt.theta) j["theta"] = *pt.theta;
    add_entropy(j, u, pt.entropy);
    j["residual"] = pt.residual;
    j["regime"] = std::string(to_string(pt.regime));
    return j;
}

inline int run_solve(const RunConfig& c, std::ostream& out) {
    auto need_alpha = [&] {
        if (!c.alpha) throw UsageError("--alpha is required for solve --" + c.target);
        return *c.alpha;
    };
    json j;
    if (c.target == "kps") {
        const auto r = solve_kps(c.tol);
        j["p"] = r.p;
        add_entropy(j, c.units, r.entropy);
        j["residual"] = r.residual;
    } else if (c.target == "ps") {
        const double a = need_alpha();
        const auto r = solve_ps(a, c.tol);
        const auto pt = h_A_alpha(a, c.tol);
        j = json{{"alpha", a}, {"p", r.p}, {"q", r.q}};
        add_entropy(j, c.units, pt.entropy);
        j["residual"] = r.residual();
        j["regime"] = std::string(to_string(pt.regime));
    } else if (c.target == "corollary") {
        const double a = need_alpha();
        const auto r = solve_corollary_theta(a, c.tol);
        j = json{{"alpha", a}, {"theta", r.theta}};
        add_entropy(j, c.units, h_freq(r.theta, a).entropy);
        j["residual"] = r.residual;
    } else if (c.target == "theta-star") {
        const double t = theta_star_closed_form();
        j = json{{"theta", t}, {"residual", std::abs(4 * t * t * (2 - t) - std::pow(2 - 3 * t, 3))}};
    } else if (c.target == "normal") {
        j = point_json(require_nonempty(h_normal_alpha(need_alpha()), "normal"), c.units);
    } else if (c.target == "level") {
        j = point_json(h_A_alpha(need_alpha(), c.tol), c.units);
    } else if (c.target == "freq") {
        if (!c.theta) throw UsageError("--theta is required for solve --freq");
        j = point_json(require_nonempty(h_freq(*c.theta, need_alpha()), "freq"), c.units);
    } else {
        throw UsageError("solve needs one of --kps --ps --corollary --theta-star --normal --level --freq");
    }
    emit(out, c.format == Format::csv && c.target != "kps" ? Format::csv : c.format, j);
    return kExitOk;
}

inline int run_count(const RunConfig& c, std::ostream& out) {
    if (c.n == 0) throw std::invalid_argument("count: --n must be >= 1");
    json j{{"set", c.set}, {"n", c.n}};
    std::string plain;
    if (c.rate) {
        if (c.set != "A") throw UsageError("--rate is only available for --set A");
        const double r = counting_growth_rate(c.n);
        j["rate_nats"] = r;
        plain = format_double(c.units == Units::bits ? nats_to_bits(r) : r);
    } else if (c.set == "A" || c.set == "B") {
        const BigCount v = c.set == "A" ? count_A(c.n) : count_B(c.n);
        plain = to_decimal(v);
        j["count"] = plain;
    } else if (c.set == "all" || c.set == "window") {
        const CountWindow ones = detail::parse_count_window(c.ones_window, c.n);
        const CountWindow pairs = detail::parse_count_window(c.pairs_window, c.n / 2);
        ProfileOptions opt{c.threads};
        if (c.mode == CountMode::exact) {
            plain = to_decimal(level_set_count<ExactArithmetic>(c.n, ones, pairs, opt));
            j["count"] = plain;
        } else {
            const double v = level_set_count<LogArithmetic>(c.n, ones, pairs, opt);
            plain = format_double(v);
            j["log_count"] = v;
            j["rate_nats"] = v / static_cast<double>(c.n);
        }
    } else {
        throw UsageError("unknown set '" + c.set + "'");
    }
    if (c.format == Format::json) out << j.dump(2) << '\n';
    else out << plain << '\n';
    return kExitOk;
}

inline int run_profile(const RunConfig& c, std::ostream& out) {
    if (c.n == 0) throw std::invalid_argument("profile: --n must be >= 1");
    ProfileOptions opt{c.threads};
    if (c.mode == CountMode::exact) {
        const auto m = profile_matrix<ExactArithmetic>(c.n, opt);
        if (c.format == Format::json) out << profile_to_json(m).dump(2) << '\n';
        else write_profile_csv(out, m);
    } else {
        const auto m = profile_matrix<LogArithmetic>(c.n, opt);
        if (c.format == Format::json) out << profile_to_json(m).dump(2) << '\n';
        else write_profile_csv(out, m);
    }
    return kExitOk;
}

inline int run_sample(const RunConfig& c, std::ostream& out) {
    if (!c.seed) throw UsageError("sample requires --seed");
    if (c.n == 0) throw std::invalid_argument("sample: --n must be >= 1");
    const MeasureParams params = build_measure(c);
    const Word w = sample(params, c.n, *c.seed);
    if (c.word_format == "json") {
        json j{{"seed", *c.seed}, {"n", c.n}, {"measure", params_to_json(params)}, {"word", w.to_string()}};
        out << j.dump() << '\n';
    } else if (c.word_format == "ascii") {
        out << "# seed=" << *c.seed << " n=" << c.n << " measure=" << params_to_json(params).dump() << '\n'
            << w.to_string() << '\n';
    } else if (c.word_format == "binary") {
        if (c.out_path.empty()) throw UsageError("binary output requires --out");
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + c.out_path + "'");
        write_binary(f, w);
        json j{{"seed", *c.seed}, {"n", c.n}, {"measure", params_to_json(params)}, {"file", c.out_path}};
        out << j.dump() << '\n';
    } else {
        throw UsageError("unknown word format '" + c.word_format + "'");
    }
    return kExitOk;
}

inline int run_estimate(const RunConfig& c, std::ostream& out) {
    if (!c.seed) throw UsageError("estimate requires --seed");
    if (c.n < 2) throw std::invalid_argument("estimate: --n must be >= 2");
    const MeasureParams params = build_measure(c);
    json runs = json::array();
    for (unsigned r = 0; r < c.repeats; ++r) {
        const std::uint64_t s = *c.seed + r;
        json row{{"seed", s}};
        row.update(word_statistics(sample(params, c.n, s), params));
        runs.push_back(std::move(row));
    }
    if (c.format == Format::json) {
        json j{{"seed", *c.seed},
               {"repeats", c.repeats},
               {"n", c.n},
               {"measure", params_to_json(params)},
               {"expected",
                {{"digit_frequency", xi(params)},
                 {"pair_frequency", expected_pair_freq(params)},
                 {"local_entropy", local_entropy(params)}}},
               {"runs", std::move(runs)}};
        out << j.dump(2) << '\n';
    } else {
        out << "# seed=" << *c.seed << " repeats=" << c.repeats << " n=" << c.n
            << " expected_digit_frequency=" << format_double(xi(params))
            << " expected_pair_frequency=" << format_double(expected_pair_freq(params))
            << " local_entropy=" << format_double(local_entropy(params)) << '\n';
        out << "seed,length,digit_frequency,pair_frequency,empirical_local_entropy\n";
        for (const auto& row : runs) {
            const auto& h = row.at("empirical_local_entropy");
            out << row.at("seed").get<std::uint64_t>() << ',' << row.at("length").get<std::uint64_t>() << ','
                << format_double(row.at("digit_frequency").get<double>()) << ','
                << format_double(row.at("pair_frequency").get<double>()) << ','
                << (h.is_string() ? h.get<std::string>() : format_double(h.get<double>())) << '\n';
        }
    }
    return kExitOk;
}

inline int run_diagnose(const RunConfig& c, std::ostream& out) {
    const LoadedWord lw = load_word(c);
    const Word& w = lw.word;
    if (w.empty()) throw std::invalid_argument("diagnose: empty word");
    json j;
    if (lw.seed) j["seed"] = *lw.seed;
    j.update(word_statistics(w, lw.params));

    if (w.size() >= c.block_order) {
        const auto bf = block_frequencies(w, c.block_order);
        j["block_frequencies"] = {{"order", c.block_order}, {"max_deviation", max_block_deviation(bf)},
                                  {"blocks", to_json(bf)}};
    }
    if (c.stride) {
        const Word sub = arithmetic_subsequence(w, c.offset, *c.stride);
        json s{{"offset", c.offset}, {"stride", *c.stride}, {"length", sub.size()}};
        if (sub.size() >= c.block_order) {
            const auto bf = block_frequencies(sub, c.block_order);
            s["max_deviation"] = max_block_deviation(bf);
            s["blocks"] = to_json(bf);
        }
        j["subsequence"] = std::move(s);
    }
    if (c.scale_N && c.depth_m) j["membership_N"] = to_json(membership_N(w, *c.scale_N, *c.depth_m, c.epsilon));
    if (c.alpha && c.scale_N) {
        json a = to_json(membership_A(w, *c.alpha, *c.scale_N, c.epsilon));
        a["alpha"] = *c.alpha;
        j["membership_A"] = std::move(a);
    }
    if (c.depth_m && std::has_single_bit(w.size()) && std::countr_zero(w.size()) >= static_cast<int>(*c.depth_m) + 3) {
        const auto t = x_table(w, *c.depth_m);
        j["x_table"] = to_json(t);
        j["nnorm"] = to_json(nnorm_gap(t, c.epsilon));
    }
    j["epsilon"] = c.epsilon;
    out << j.dump(2) << '\n';
    return kExitOk;
}

} // namespace detail

/// Dispatches a validated configuration; library exceptions propagate.
inline int run(const RunConfig& c, std::ostream& out) {
    switch (c.command) {
        case Command::spectrum: return detail::run_spectrum(c, out);
        case Command::solve: return detail::run_solve(c, out);
        case Command::count: return detail::run_count(c, out);
        case Command::profile: return detail::run_profile(c, out);
        case Command::sample: return detail::run_sample(c, out);
        case Command::estimate: return detail::run_estimate(c, out);
        case Command::diagnose: return detail::run_diagnose(c, out);
    }
    return kExitInternal;
}

namespace detail {

struct Parser {
    CLI::App app{"Entropy spectra of dyadic multiple-ergodic level sets", "dyadic_spectra"};
    RunConfig cfg;
    std::string format = "csv", units = "nats", mode = "exact";
    double alpha_value = 0, theta_value = 0;
    std::uint64_t seed_value = 0, stride_value = 1;
    unsigned N_value = 0, m_value = 0;
    bool kps = false, ps = false, corollary = false, theta_star = false, normal = false, level = false,
         freq = false;

    CLI::App* spectrum;
    CLI::App* solve;
    CLI::App* count;
    CLI::App* profile;
    CLI::App* sample;
    CLI::App* estimate;
    CLI::App* diagnose;

    Parser() {
        app.require_subcommand(1);
        app.set_help_all_flag("--help-all", "Show help for all subcommands");
        cfg.threads = default_thread_count();

        auto common = [this](CLI::App* s) {
            s->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
            s->add_option("--units", units, "Entropy units")->check(CLI::IsMember({"nats", "bits"}));
            s->add_option("--tol", cfg.tol, "Solver tolerance")->check(CLI::PositiveNumber);
            s->add_option("--threads", cfg.threads, "Worker threads (default: DYADIC_SPECTRA_THREADS)")
                ->check(CLI::PositiveNumber);
        };
        auto measure_opts = [this](CLI::App* s) {
            s->add_option("--measure", cfg.measure, "alpha | theta-alpha | uniform | params")
                ->check(CLI::IsMember({"alpha", "theta-alpha", "uniform", "params"}));
            s->add_option("--alpha", alpha_value, "Pair frequency alpha");
            s->add_option("--theta", theta_value, "Digit frequency theta");
            s->add_option("--params", cfg.params_path, "JSON file with p0,p1,p00,p01,p10,p11");
            s->add_option("--n", cfg.n, "Word length")->required();
            s->add_option("--seed", seed_value, "RNG seed")->required();
        };

        spectrum = app.add_subcommand("spectrum", "Tabulate an entropy spectrum over a grid");
        common(spectrum);
        spectrum->add_option("--family", cfg.family, "normal | A | freq")
            ->check(CLI::IsMember({"normal", "A", "A_alpha", "level", "freq", "frequency"}));
        spectrum->add_option("--alpha-grid", cfg.alpha_grid, "start:stop:step (inclusive)");
        spectrum->add_option("--theta-grid", cfg.theta_grid, "start:stop:step (freq family)");

        solve = app.add_subcommand("solve", "Solve for a single spectrum value");
        common(solve);
        solve->add_flag("--kps", kps, "Root of p^2 = (1-p)^3 and the entropy of A");
        solve->add_flag("--ps", ps, "Roots (p,q) and entropy of A_alpha");
        solve->add_flag("--level", level, "Entropy of A_alpha");
        solve->add_flag("--corollary", corollary, "Maximising theta for A_alpha");
        solve->add_flag("--theta-star", theta_star, "Closed-form maximising theta at alpha = 0");
        solve->add_flag("--normal", normal, "Entropy of normal sequences in A_alpha");
        solve->add_flag("--freq", freq, "Entropy of E_theta intersect A_alpha");
        solve->add_option("--alpha", alpha_value, "alpha");
        solve->add_option("--theta", theta_value, "theta");

        count = app.add_subcommand("count", "Count words of length n");
        common(count);
        count->add_option("--set", cfg.set, "A | B | all | window")
            ->check(CLI::IsMember({"A", "B", "all", "window"}));
        count->add_option("--n", cfg.n, "Word length")->required();
        count->add_option("--ones", cfg.ones_window, "lo:hi window on the number of ones");
        count->add_option("--pairs", cfg.pairs_window, "lo:hi window on the number of 11-pairs");
        count->add_option("--mode", mode, "exact | log")->check(CLI::IsMember({"exact", "log"}));
        count->add_flag("--rate", cfg.rate, "Print (1/n) log count_A(n)");

        profile = app.add_subcommand("profile", "Tally of words by (ones, 11-pairs)");
        common(profile);
        profile->add_option("--n", cfg.n, "Word length")->required();
        profile->add_option("--mode", mode, "exact | log")->check(CLI::IsMember({"exact", "log"}));

        sample = app.add_subcommand("sample", "Sample a word from a telescopic measure");
        common(sample);
        measure_opts(sample);
        sample->add_option("--word-format", cfg.word_format, "json | ascii | binary")
            ->check(CLI::IsMember({"json", "ascii", "binary"}));
        sample->add_option("--out", cfg.out_path, "Output file for binary words");

        estimate = app.add_subcommand("estimate", "Empirical frequencies and local entropy of samples");
        common(estimate);
        measure_opts(estimate);
        estimate->add_option("--repeats", cfg.repeats, "Number of consecutive seeds")->check(CLI::PositiveNumber);

        diagnose = app.add_subcommand("diagnose", "Normality and level-set diagnostics for a word");
        common(diagnose);
        diagnose->add_option("--input", cfg.input_path, "Word file")->required();
        diagnose->add_option("--input-format", cfg.input_format, "auto | json | ascii | binary")
            ->check(CLI::IsMember({"auto", "json", "ascii", "binary"}));
        diagnose->add_option("--N", N_value, "Smallest scale checked");
        diagnose->add_option("--m", m_value, "Depth of R-blocks");
        diagnose->add_option("--epsilon", cfg.epsilon, "Window half-width")->check(CLI::PositiveNumber);
        diagnose->add_option("--alpha", alpha_value, "Target pair frequency");
        diagnose->add_option("--block-order", cfg.block_order, "Block length for frequencies")
            ->check(CLI::Range(1u, 16u));
        diagnose->add_option("--stride", stride_value, "Arithmetic subsequence stride")->check(CLI::PositiveNumber);
        diagnose->add_option("--offset", cfg.offset, "Arithmetic subsequence offset");
    }

    RunConfig finish() {
        RunConfig c = cfg;
        c.format = format == "json" ? Format::json : Format::csv;
        c.units = units == "bits" ? Units::bits : Units::nats;
        c.mode = mode == "log" ? CountMode::log_space : CountMode::exact;
        auto given = [](CLI::App* s, const char* name) { return s->count(name) > 0; };

        CLI::App* active = app.get_subcommands().front();
        if (active == spectrum) c.command = Command::spectrum;
        else if (active == solve) c.command = Command::solve;
        else if (active == count) c.command = Command::count;
        else if (active == profile) c.command = Command::profile;
        else if (active == sample) c.command = Command::sample;
        else if (active == estimate) c.command = Command::estimate;
        else c.command = Command::diagnose;

        if (active->get_option_no_throw("--alpha") && given(active, "--alpha")) c.alpha = alpha_value;
        if (active->get_option_no_throw("--theta") && given(active, "--theta")) c.theta = theta_value;
        if (active->get_option_no_throw("--seed") && given(active, "--seed")) c.seed = seed_value;
        if (active == diagnose) {
            if (given(diagnose, "--N")) c.scale_N = N_value;
            if (given(diagnose, "--m")) c.depth_m = m_value;
            if (given(diagnose, "--stride")) c.stride = stride_value;
        }
        if (active == solve) {
            const int picked = kps + ps + corollary + theta_star + normal + level + freq;
            if (picked != 1) throw UsageError("solve needs exactly one of --kps --ps --level --corollary --theta-star --normal --freq");
            c.target = kps ? "kps" : ps ? "ps" : corollary ? "corollary" : theta_star ? "theta-star"
                     : normal ? "normal" : level ? "level" : "freq";
            if (c.format == Format::csv && !given(solve, "--format")) c.format = Format::json;
        }
        return c;
    }
};

} // namespace detail

/// Parses argv (without the program name). Throws UsageError, or
/// CLI::CallForHelp when help was requested.
inline RunConfig parse_args(const std::vector<std::string>& args) {
    detail::Parser p;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        p.app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::CallForAllHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    return p.finish();
}

inline std::string usage() {
    detail::Parser p;
    return p.app.help();
}

/// Full command-line entry point with exit-code mapping.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_args(args);
        return run(cfg, out);
    } catch (const CLI::CallForHelp&) {
        out << usage();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        detail::Parser p;
        out << p.app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << usage();
        return kExitUsage;
    } catch (const EmptyLevelSet& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const CountOverflow& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace dyadic::cli
