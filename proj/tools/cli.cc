// Copyright 2026 The eb92 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "eb92/attack_io.h"
#include "eb92/csv.h"
#include "eb92/error.h"
#include "eb92/finite_key.h"
#include "eb92/golden.h"
#include "eb92/mc_sim.h"
#include "eb92/optimizer.h"
#include "eb92/validation.h"
#include "json.hpp"

namespace eb92::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CLI::Validator kOpenUnit(
    [](std::string &s) -> std::string {
        double v = 0;
        try {
            v = parse_number(s);
        } catch (const InvalidArgument &) {
            return "value " + s + " is not a number";
        }
        if (!(v > 0 && v < 1)) {
            return "value " + s + " not in range (0, 1)";
        }
        return {};
    },
    "in (0, 1)");

const CLI::Validator kNoise = CLI::Range(0.0, 0.5);
const CLI::Validator kSignals = CLI::Range(1.0, 1e300);

struct CommonFlags {
    int jobs = 0;
    std::string profile = "fast";
    bool asymptotic = false;
    double efficiency = 1.2;
    std::string qber_variant = "conclusive";
    int free_var_grid = kDefaultFreeVariableGrid;
    int grid_per_axis = 5;
    SecurityEpsilons eps;
};

void add_jobs(CLI::App *app, int &jobs) {
    app->add_option("--jobs", jobs, "Worker threads; 0 uses all available, 1 runs sequentially")
        ->check(CLI::NonNegativeNumber);
}

void add_common(CLI::App *app, CommonFlags &f) {
    add_jobs(app, f.jobs);
    app->add_option("--profile", f.profile, "Confidence-box search profile")
        ->check(CLI::IsMember({"fast", "thorough"}));
    app->add_flag("--asymptotic", f.asymptotic, "Infinite-key limit: no deviations, no Delta");
    app->add_option("--efficiency", f.efficiency, "Error-correction efficiency (leak = f h(Q))")
        ->check(CLI::Range(1.0, 10.0));
    app->add_option("--qber-pacc-variant", f.qber_variant,
                    "Acceptance probability in the QBER bound")
        ->check(CLI::IsMember({"conclusive", "printed"}));
    app->add_option("--free-var-grid", f.free_var_grid, "Grid points for the free overlap")
        ->check(CLI::Range(3, 100000));
    app->add_option("--grid-per-axis", f.grid_per_axis, "Lattice points per axis (thorough)")
        ->check(CLI::Range(2, 50));
    app->add_option("--eps", f.eps.eps, "Overall security parameter")->check(kOpenUnit);
    app->add_option("--eps-ec", f.eps.eps_ec, "Error-correction failure probability")
        ->check(kOpenUnit);
    app->add_option("--eps-bar", f.eps.eps_bar, "Smoothing parameter")->check(kOpenUnit);
    app->add_option("--eps-pe", f.eps.eps_pe, "Parameter-estimation failure probability")
        ->check(kOpenUnit);
}

KeyRateOptions options_from(const CommonFlags &f) {
    KeyRateOptions o;
    o.search.profile = parse_profile(f.profile);
    o.search.grid_per_axis = f.grid_per_axis;
    o.search.free_var_grid = f.free_var_grid;
    o.search.jobs = f.jobs;
    o.asymptotic = f.asymptotic;
    o.ec_efficiency = f.efficiency;
    o.qber_variant = f.qber_variant == "printed" ? QberVariant::kPrinted : QberVariant::kConclusive;
    try {
        f.eps.validate();
    } catch (const InvalidArgument &e) {
        throw UsageError(std::string("--eps*: ") + e.what());
    }
    return o;
}

// N is irrelevant in asymptotic mode (it cancels in r); a finite stand-in
// keeps ProtocolParams valid.
double signals_for(bool asymptotic, std::optional<double> n) {
    if (asymptotic) {
        return n.value_or(1e6);
    }
    if (!n) {
        throw UsageError("--n is required unless --asymptotic is given");
    }
    return *n;
}

void print_report(std::ostream &out, double q, const KeyRateReport &r) {
    auto line = [&](const char *key, const std::string &value) {
        out << key << std::string(22 - std::string(key).size(), ' ') << value << '\n';
    };
    line("q", format_number(q));
    line("n_signals", r.asymptotic ? "inf" : format_number(r.n_signals));
    line("alpha", format_number(r.alpha));
    line("p_enc", format_number(r.p_enc));
    line("s_xi", format_number(r.s_xi));
    line("qber_bound", format_number(r.qber));
    line("leak_per_bit", format_number(r.leak_per_bit));
    line("delta_bits", format_number(r.delta_bits));
    line("raw_key_bits", format_number(r.n_raw));
    line("r_prime", format_number(r.r_prime));
    line("worst_re_e1e2", format_number(r.optimal_free_var));
    if (!r.asymptotic) {
        line("box_points", std::to_string(r.box_points));
        line("infeasible_fraction", format_number(r.infeasible_fraction));
    }
    if (r.r_effective > 0) {
        line("r_eff", format_number(r.r_effective));
    } else {
        line("r_eff", "0");
        out << "note: no positive rate (unclipped r_eff = " << format_number(r.r_effective)
            << ")\n";
    }
}

std::ostream &open_output(const std::string &path, std::ofstream &file, std::ostream &fallback) {
    if (path.empty()) {
        return fallback;
    }
    file.open(path, std::ios::out | std::ios::trunc);
    if (!file) {
        throw UsageError("--out: cannot open '" + path + "' for writing");
    }
    return file;
}

void write_csv_header(std::ostream &out, char sep) {
    out << join_row(key_rate_columns(), sep) << '\n';
}

// ---------------------------------------------------------------- rate

struct RateFlags {
    CommonFlags common;
    double q = 0;
    std::optional<double> n;
    std::optional<double> alpha;
    std::optional<double> p_enc;
    std::string out;
    bool gnuplot = false;
};

void setup_rate(CLI::App *app, RateFlags &f) {
    app->add_option("--q", f.q, "Depolarizing noise Q")->required()->check(kNoise);
    app->add_option("--n", f.n, "Number of signals N")->check(kSignals);
    app->add_option("--alpha", f.alpha, "Overlap <0|alpha>; optimized when omitted")
        ->check(kOpenUnit);
    app->add_option("--penc", f.p_enc, "Key-round probability; optimized when omitted")
        ->check(kOpenUnit);
    app->add_option("--out", f.out, "Also write the result as one CSV row");
    app->add_flag("--gnuplot-style", f.gnuplot, "Whitespace-separated CSV");
    add_common(app, f.common);
}

int run_rate(const RateFlags &f, std::ostream &out) {
    KeyRateOptions options = options_from(f.common);
    double n = signals_for(options.asymptotic, f.n);
    if (f.alpha.has_value() != f.p_enc.has_value()) {
        throw UsageError("give both --alpha and --penc, or neither to optimize");
    }
    KeyRateReport report;
    if (f.alpha) {
        report = symmetric_key_rate(f.q, ProtocolParams(*f.alpha, *f.p_enc, n), f.common.eps,
                                    options);
    } else {
        OptimizerConfig config;
        config.jobs = f.common.jobs;
        config.record_trace = false;
        report = optimize(f.q, n, f.common.eps, options, config).best_report;
    }
    print_report(out, f.q, report);
    if (!f.out.empty()) {
        std::ofstream file;
        std::ostream &csv = open_output(f.out, file, out);
        char sep = f.gnuplot ? ' ' : ',';
        write_csv_header(csv, sep);
        csv << join_row(key_rate_fields(f.q, report), sep) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeFlags {
    CommonFlags common;
    std::optional<double> q;
    std::optional<double> n;
    double alpha_step = 0.05;
    double penc_step = 0.05;
    int refine_rounds = 2;
    std::string objective = "effective";
    std::string trace;
    bool tolerance = false;
    double resolution = 1e-3;
    double q_max = 0.2;
};

void setup_optimize(CLI::App *app, OptimizeFlags &f) {
    app->add_option("--q", f.q, "Depolarizing noise Q")->check(kNoise);
    app->add_option("--n", f.n, "Number of signals N")->check(kSignals);
    app->add_option("--alpha-step", f.alpha_step, "Coarse grid step in alpha")
        ->check(CLI::Range(1e-4, 0.5));
    app->add_option("--penc-step", f.penc_step, "Coarse grid step in P_enc")
        ->check(CLI::Range(1e-4, 0.5));
    app->add_option("--refine-rounds", f.refine_rounds, "Local refinement rounds")
        ->check(CLI::Range(0, 10));
    app->add_option("--objective", f.objective, "Quantity to maximize")
        ->check(CLI::IsMember({"effective", "raw"}));
    app->add_option("--trace", f.trace, "Write every evaluated (alpha, penc, r) as CSV");
    app->add_flag("--tolerance", f.tolerance,
                  "Find the largest Q with a positive optimized rate instead");
    app->add_option("--resolution", f.resolution, "Bisection resolution in Q (--tolerance)")
        ->check(CLI::Range(1e-6, 0.1));
    app->add_option("--q-max", f.q_max, "Upper end of the Q scan (--tolerance)")
        ->check(CLI::Range(0.01, 0.5));
    add_common(app, f.common);
}

int run_optimize(const OptimizeFlags &f, std::ostream &out) {
    KeyRateOptions options = options_from(f.common);
    double n = signals_for(options.asymptotic, f.n);
    OptimizerConfig config;
    config.alpha_step = f.alpha_step;
    config.penc_step = f.penc_step;
    config.refine_rounds = f.refine_rounds;
    config.objective = f.objective == "raw" ? Objective::kRawKeyRate : Objective::kEffectiveRate;
    config.jobs = f.common.jobs;
    config.record_trace = !f.trace.empty();

    if (f.tolerance) {
        if (f.q) {
            throw UsageError("--q cannot be combined with --tolerance");
        }
        ToleranceConfig tc;
        tc.resolution = f.resolution;
        tc.q_max = f.q_max;
        NoiseToleranceResult res = noise_tolerance(n, f.common.eps, options, config, tc);
        out << "n_signals             " << (options.asymptotic ? "inf" : format_number(n)) << '\n';
        for (const auto &[q, r] : res.scan) {
            out << "scan q=" << format_number(q) << " r_eff=" << format_number(r) << '\n';
        }
        out << "sign_changes          " << res.sign_changes << '\n';
        out << "bisected              " << (res.bisected ? "yes" : "no") << '\n';
        out << "tolerance             " << format_number(res.tolerance) << '\n';
        return kExitOk;
    }
    if (!f.q) {
        throw UsageError("--q is required (or use --tolerance)");
    }
    OptimizationResult res = optimize(*f.q, n, f.common.eps, options, config);
    print_report(out, *f.q, res.best_report);
    out << "evaluations           " << res.evaluations << '\n';
    if (!f.trace.empty()) {
        std::ofstream file;
        std::ostream &csv = open_output(f.trace, file, out);
        csv << "alpha,penc,r\n";
        for (const auto &t : res.trace) {
            csv << format_number(t.alpha) << ',' << format_number(t.p_enc) << ','
                << format_number(t.r) << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
    CommonFlags common;
    std::string preset;
    std::string vary;
    std::optional<double> from;
    std::optional<double> to;
    int steps = 0;
    std::vector<double> values;
    std::optional<double> q;
    std::optional<double> n;
    std::optional<double> alpha;
    std::optional<double> p_enc;
    std::string out;
    bool gnuplot = false;
};

void setup_sweep(CLI::App *app, SweepFlags &f) {
    app->add_option("--preset", f.preset, "Predefined figure grid")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    app->add_option("--vary", f.vary, "Swept quantity")->check(CLI::IsMember({"n", "q", "alpha"}));
    app->add_option("--from", f.from, "First value of the swept quantity");
    app->add_option("--to", f.to, "Last value of the swept quantity");
    app->add_option("--steps", f.steps, "Number of points (geometric for n, linear otherwise)")
        ->check(CLI::Range(1, 100000));
    app->add_option("--values", f.values, "Explicit comma-separated values")->delimiter(',');
    app->add_option("--q", f.q, "Depolarizing noise Q")->check(kNoise);
    app->add_option("--n", f.n, "Number of signals N")->check(kSignals);
    app->add_option("--alpha", f.alpha, "Fixed alpha")->check(kOpenUnit);
    app->add_option("--penc", f.p_enc, "Fixed key-round probability")->check(kOpenUnit);
    app->add_option("--out", f.out, "Output file (default stdout)");
    app->add_flag("--gnuplot-style", f.gnuplot, "Whitespace-separated columns");
    add_common(app, f.common);
}

struct SweepPointSpec {
    double q = 0;
    double n = 0;  // inf for asymptotic
    std::optional<double> alpha;
    std::optional<double> p_enc;
};

std::vector<double> linear(double from, double to, double step) {
    std::vector<double> v;
    int count = static_cast<int>(std::floor((to - from) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
        v.push_back(from + step * i);
    }
    return v;
}

std::vector<SweepPointSpec> preset_points(const std::string &preset) {
    std::vector<SweepPointSpec> pts;
    if (preset == "fig1") {
        for (double q : {0.01, 0.03, 0.05}) {
            for (int e = 6; e <= 9; ++e) {
                for (double m : {1.0, 5.0}) {
                    pts.push_back({q, m * std::pow(10.0, e), {}, {}});
                }
            }
        }
    } else if (preset == "fig2") {
        for (double n : {1e6, 1e7, 1e8, 1e9, kInf}) {
            for (double q : linear(0.005, 0.12, 0.005)) {
                pts.push_back({q, n, {}, {}});
            }
        }
    } else {
        for (double n : {1e6, 1e7, 1e8, 1e9}) {
            for (double a : linear(0.02, 0.98, 0.02)) {
                pts.push_back({0.02, n, a, 0.8});
            }
        }
    }
    return pts;
}

std::vector<double> sweep_values(const SweepFlags &f) {
    if (!f.values.empty()) {
        if (f.from || f.to || f.steps) {
            throw UsageError("--values cannot be combined with --from/--to/--steps");
        }
        return f.values;
    }
    if (!f.from || !f.to || f.steps < 1) {
        throw UsageError("--vary needs --values or all of --from, --to, --steps");
    }
    std::vector<double> v;
    bool geometric = f.vary == "n";
    if (geometric && (*f.from <= 0 || *f.to <= 0)) {
        throw UsageError("--from/--to must be positive when varying n");
    }
    for (int i = 0; i < f.steps; ++i) {
        double t = f.steps == 1 ? 0.0 : static_cast<double>(i) / (f.steps - 1);
        v.push_back(geometric ? *f.from * std::pow(*f.to / *f.from, t)
                              : *f.from + (*f.to - *f.from) * t);
    }
    return v;
}

std::vector<SweepPointSpec> custom_points(const SweepFlags &f) {
    if (f.vary.empty()) {
        throw UsageError("sweep needs --preset or --vary");
    }
    bool asym = f.common.asymptotic;
    std::vector<SweepPointSpec> pts;
    for (double v : sweep_values(f)) {
        SweepPointSpec p;
        p.q = f.vary == "q" ? v : f.q.value_or(-1);
        p.alpha = f.vary == "alpha" ? std::optional<double>(v) : f.alpha;
        p.p_enc = f.p_enc;
        if (f.vary == "n") {
            if (asym) {
                throw UsageError("--vary n is meaningless with --asymptotic");
            }
            p.n = v;
        } else {
            p.n = asym ? kInf : signals_for(false, f.n);
        }
        pts.push_back(p);
    }
    if (f.vary != "q" && !f.q) {
        throw UsageError("--q is required unless --vary q");
    }
    if (f.vary == "alpha" && !f.p_enc) {
        throw UsageError("--penc is required with --vary alpha");
    }
    if (f.vary != "alpha" && f.alpha.has_value() != f.p_enc.has_value()) {
        throw UsageError("give both --alpha and --penc, or neither to optimize");
    }
    for (const auto &p : pts) {
        if (!(p.q >= 0 && p.q <= 0.5)) {
            throw UsageError("--vary q: value " + format_number(p.q) + " not in range [0, 0.5]");
        }
        if (p.alpha && !(*p.alpha > 0 && *p.alpha < 1)) {
            throw UsageError("--vary alpha: value " + format_number(*p.alpha) +
                             " not in range (0, 1)");
        }
        if (!(p.n >= 1)) {
            throw UsageError("--vary n: value " + format_number(p.n) + " must be >= 1");
        }
    }
    return pts;
}

int run_sweep(const SweepFlags &f, std::ostream &out) {
    KeyRateOptions base = options_from(f.common);
    std::vector<SweepPointSpec> pts;
    if (!f.preset.empty()) {
        if (!f.vary.empty() || f.q || f.n || f.alpha || f.p_enc || f.common.asymptotic) {
            throw UsageError("--preset fixes the grid; drop --vary/--q/--n/--alpha/--penc/--asymptotic");
        }
        pts = preset_points(f.preset);
    } else {
        pts = custom_points(f);
    }
    std::ofstream file;
    std::ostream &csv = open_output(f.out, file, out);
    char sep = f.gnuplot ? ' ' : ',';
    write_csv_header(csv, sep);
    for (const auto &p : pts) {
        KeyRateOptions options = base;
        options.asymptotic = std::isinf(p.n);
        double n = options.asymptotic ? 1e6 : p.n;
        std::vector<std::string> row;
        try {
            KeyRateReport report;
            if (p.alpha && p.p_enc) {
                report = symmetric_key_rate(p.q, ProtocolParams(*p.alpha, *p.p_enc, n),
                                            f.common.eps, options);
            } else {
                OptimizerConfig config;
                config.jobs = f.common.jobs;
                config.record_trace = false;
                report = optimize(p.q, n, f.common.eps, options, config).best_report;
            }
            row = key_rate_fields(p.q, report);
        } catch (const ComputationError &e) {
            row = failed_fields(p.q, p.n, p.alpha, p.p_enc, e.what());
        } catch (const InvalidArgument &e) {
            row = failed_fields(p.q, p.n, p.alpha, p.p_enc, e.what());
        }
        if (f.gnuplot) {
            // Whitespace-separated files cannot carry empty fields.
            for (auto &field : row) {
                if (field.empty()) {
                    field = "-";
                } else {
                    for (char &c : field) {
                        if (c == ' ') {
                            c = '_';
                        }
                    }
                }
            }
        }
        csv << join_row(row, sep) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
    int jobs = 0;
    std::optional<double> q;
    std::string attack_file;
    double alpha = 0;
    double p_enc = 0;
    double rounds = 1e6;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
};

void setup_simulate(CLI::App *app, SimulateFlags &f) {
    auto *q = app->add_option("--q", f.q, "Depolarizing noise Q")->check(kNoise);
    auto *attack = app->add_option("--attack-file", f.attack_file, "Attack vectors as JSON")
                       ->check(CLI::ExistingFile);
    q->excludes(attack);
    app->add_option("--alpha", f.alpha, "Overlap <0|alpha>")->required()->check(kOpenUnit);
    app->add_option("--penc", f.p_enc, "Key-round probability")->required()->check(kOpenUnit);
    app->add_option("--rounds", f.rounds, "Protocol rounds")->check(CLI::Range(1.0, 1e15));
    app->add_option("--seed", f.seed, "RNG seed");
    app->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", f.out, "Output file (default stdout)");
    add_jobs(app, f.jobs);
}

// Two-sided deviation of a binomial count in units of its standard deviation.
std::optional<double> z_score(double observed, double expected, double rounds) {
    double p = expected / rounds;
    double sigma = std::sqrt(rounds * p * (1 - p));
    if (sigma == 0) {
        if (observed == expected) {
            return 0.0;
        }
        return std::nullopt;
    }
    return (observed - expected) / sigma;
}

nlohmann::json optional_json(std::optional<double> v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

int run_simulate(const SimulateFlags &f, std::ostream &out) {
    if (!f.q && f.attack_file.empty()) {
        throw UsageError("simulate needs --q or --attack-file");
    }
    if (f.rounds != std::floor(f.rounds)) {
        throw UsageError("--rounds must be an integer");
    }
    auto rounds = static_cast<std::uint64_t>(f.rounds);
    std::optional<SimChannel> channel;
    if (f.q) {
        channel = SimChannel::depolarizing(*f.q);
    } else {
        std::ifstream in(f.attack_file);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            channel = SimChannel::attack(attack_from_json(ss.str()));
        } catch (const InvalidArgument &e) {
            throw UsageError(std::string("--attack-file: ") + e.what());
        }
    }
    ProtocolParams params(f.alpha, f.p_enc, f.rounds);
    SimulationOutcome res = simulate(params, *channel, rounds, f.seed, f.jobs);
    ChannelStatistics stats = channel_statistics(*channel, f.alpha);
    SampleCounts expected = expected_events(params, stats, f.rounds);
    SampleCounts observed = res.observed_counts();
    ChannelStatistics empirical = res.empirical_stats();
    auto expected_arr = std::array<double, kNumStatistics>{expected.c01, expected.c10, expected.c0a,
                                                           expected.c1a, expected.ca0,
                                                           expected.ca_abar};
    auto stats_arr = to_array(stats);
    auto emp_arr = to_array(empirical);

    std::optional<double> formula_ck;
    if (f.q) {
        formula_ck = expected_counts(params, *f.q).c_k;
    }
    std::optional<double> qber;
    if (res.conclusive_key_rounds > 0) {
        qber = empirical_qber(res);
    }

    std::ofstream file;
    std::ostream &os = open_output(f.out, file, out);
    if (f.format == "json") {
        nlohmann::ordered_json j;
        j["rounds"] = res.rounds;
        j["seed"] = res.seed;
        j["alpha"] = f.alpha;
        j["p_enc"] = f.p_enc;
        if (f.q) {
            j["channel"] = {{"type", "depolarizing"}, {"q", *f.q}};
        } else {
            j["channel"] = {{"type", "attack"}, {"file", f.attack_file}};
        }
        j["key_rounds"] = res.key_rounds;
        j["nonkey_rounds"] = res.nonkey_rounds;
        j["conclusive_key_rounds"] = res.conclusive_key_rounds;
        j["raw_key_errors"] = res.raw_key_errors;
        j["empirical_qber"] = optional_json(qber);
        nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
        for (int i = 0; i < kNumStatistics; ++i) {
            nlohmann::ordered_json b;
            b["statistic"] = std::string(statistic_name(static_cast<Statistic>(i)));
            b["events"] = res.events[i];
            b["trials"] = res.trials[i];
            b["empirical"] = emp_arr[i];
            b["expected_probability"] = stats_arr[i];
            b["expected_events"] = expected_arr[i];
            b["z"] = optional_json(
                z_score(static_cast<double>(res.events[i]), expected_arr[i], f.rounds));
            buckets.push_back(b);
        }
        j["statistics"] = buckets;
        nlohmann::ordered_json ck;
        ck["observed"] = res.conclusive_key_rounds;
        ck["expected_count_formula"] = optional_json(formula_ck);
        ck["z_count_formula"] = optional_json(
            formula_ck ? z_score(observed.c_k, *formula_ck, f.rounds) : std::nullopt);
        ck["expected_summed_outcomes"] = expected.c_k;
        ck["z_summed_outcomes"] = optional_json(z_score(observed.c_k, expected.c_k, f.rounds));
        j["conclusive"] = ck;
        os << j.dump(2) << '\n';
    } else {
        os << "bucket,observed,trials,empirical,expected_probability,expected,z\n";
        auto opt = [](std::optional<double> v) { return v ? format_number(*v) : std::string(); };
        for (int i = 0; i < kNumStatistics; ++i) {
            os << statistic_name(static_cast<Statistic>(i)) << ',' << res.events[i] << ','
               << res.trials[i] << ',' << format_number(emp_arr[i]) << ','
               << format_number(stats_arr[i]) << ',' << format_number(expected_arr[i]) << ','
               << opt(z_score(static_cast<double>(res.events[i]), expected_arr[i], f.rounds))
               << '\n';
        }
        if (formula_ck) {
            os << "c_k_count_formula," << res.conclusive_key_rounds << ',' << res.key_rounds
               << ",,," << format_number(*formula_ck) << ','
               << opt(z_score(observed.c_k, *formula_ck, f.rounds)) << '\n';
        }
        os << "c_k_summed_outcomes," << res.conclusive_key_rounds << ',' << res.key_rounds << ",,,"
           << format_number(expected.c_k) << ','
           << opt(z_score(observed.c_k, expected.c_k, f.rounds)) << '\n';
        os << "raw_key_errors," << res.raw_key_errors << ',' << res.conclusive_key_rounds << ','
           << opt(qber) << ",,,\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- validate

struct ValidateFlags {
    int trials = 1000;
    std::uint64_t seed = 1;
    std::string lambda_form = "difference";
};

void setup_validate(CLI::App *app, ValidateFlags &f) {
    app->add_option("--trials", f.trials, "Random attacks per suite")->check(CLI::Range(1, 10000000));
    app->add_option("--seed", f.seed, "RNG seed");
    app->add_option("--lambda-form", f.lambda_form)
        ->check(CLI::IsMember({"difference", "printed"}))
        ->group("");
}

int run_validate(const ValidateFlags &f, std::ostream &out) {
    ValidationConfig config;
    config.trials = f.trials;
    config.seed = f.seed;
    config.lambda_form =
        f.lambda_form == "printed" ? LambdaForm::kPrintedSum : LambdaForm::kDifference;
    ValidationReport report = run_validation(config);
    for (const auto &s : report.suites) {
        out << (s.passed ? "PASS " : "FAIL ") << s.name << " worst=" << format_number(s.worst, 4)
            << " limit=" << format_number(s.limit, 4) << " trials=" << s.trials << '\n';
        if (!s.passed) {
            out << "  counterexample: " << s.counterexample << '\n';
        }
    }
    return report.passed() ? kExitOk : kExitValidation;
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config needs a file name");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) {
        return rest;
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--config: cannot read '" + path + "'");
    }
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigBase().from_config(in);
    } catch (const CLI::ParseError &e) {
        throw UsageError("--config: " + std::string(e.what()));
    }
    for (const auto &item : items) {
        if (!item.parents.empty() || item.name == "++" || item.name == "--") {
            throw UsageError("--config: sections are not supported (key '" + item.fullname() +
                             "')");
        }
        std::string flag = "--" + item.name;
        bool given = false;
        for (const auto &a : rest) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                given = true;
            }
        }
        if (given) {
            continue;
        }
        std::string value;
        for (std::size_t k = 0; k < item.inputs.size(); ++k) {
            value += (k ? "," : "") + item.inputs[k];
        }
        rest.push_back(flag + "=" + value);
    }
    return rest;
}

int run(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app("Finite-key rates for the extended B92 protocol", "eb92");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    RateFlags rate_flags;
    OptimizeFlags optimize_flags;
    SweepFlags sweep_flags;
    SimulateFlags simulate_flags;
    ValidateFlags validate_flags;
    auto *rate = app.add_subcommand("rate", "Key rate at one point, or optimized over alpha, P_enc");
    auto *optimize_cmd = app.add_subcommand("optimize", "Optimize alpha and P_enc");
    auto *sweep = app.add_subcommand("sweep", "Key-rate curves as CSV");
    auto *simulate_cmd = app.add_subcommand("simulate", "Monte Carlo run of the protocol");
    auto *validate = app.add_subcommand("validate", "Check the entropy bound against exact values");
    setup_rate(rate, rate_flags);
    setup_optimize(optimize_cmd, optimize_flags);
    setup_sweep(sweep, sweep_flags);
    setup_simulate(simulate_cmd, simulate_flags);
    setup_validate(validate, validate_flags);
    for (auto *sub : {rate, optimize_cmd, sweep, simulate_cmd}) {
        sub->add_option("--config", "key = value file; flags on the command line win");
    }

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::vector<const char *> argv{"eb92"};
        for (const auto &a : args) {
            argv.push_back(a.c_str());
        }
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError &e) {
            int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }
        if (*rate) {
            return run_rate(rate_flags, out);
        }
        if (*optimize_cmd) {
            return run_optimize(optimize_flags, out);
        }
        if (*sweep) {
            return run_sweep(sweep_flags, out);
        }
        if (*simulate_cmd) {
            return run_simulate(simulate_flags, out);
        }
        return run_validate(validate_flags, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "computation error: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace eb92::cli
