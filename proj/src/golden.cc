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

#include "eb92/golden.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "eb92/csv.h"
#include "eb92/error.h"
#include "eb92/optimizer.h"

namespace eb92 {

namespace {

constexpr const char *kHeader =
    "id\ttag\tprofile\tmode\tq\tn\talpha\tpenc\texpect\tr_prime\tr_eff\ts_xi\tqber";
constexpr int kColumns = 13;

std::vector<std::string> split_tabs(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, '\t')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == '\t') {
        out.emplace_back();
    }
    return out;
}

Provenance parse_provenance(const std::string &s) {
    if (s == "published") {
        return Provenance::kPublished;
    }
    if (s == "closed_form") {
        return Provenance::kClosedForm;
    }
    if (s == "computed") {
        return Provenance::kComputed;
    }
    throw InvalidArgument("unknown provenance tag '" + s + "'");
}

std::optional<double> parse_optional(const std::string &s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_number(s);
}

std::string format_optional(const std::optional<double> &v) {
    return v ? format_exact(*v) : std::string();
}

}  // namespace

bool GoldenRecord::asymptotic() const {
    return std::isinf(n_signals);
}

const char *provenance_name(Provenance p) {
    switch (p) {
        case Provenance::kPublished:
            return "published";
        case Provenance::kClosedForm:
            return "closed_form";
        case Provenance::kComputed:
            return "computed";
    }
    return "?";
}

const char *profile_name(SearchProfile p) {
    return p == SearchProfile::kFast ? "fast" : "thorough";
}

SearchProfile parse_profile(const std::string &name) {
    if (name == "fast") {
        return SearchProfile::kFast;
    }
    if (name == "thorough") {
        return SearchProfile::kThorough;
    }
    throw InvalidArgument("profile must be fast or thorough, got '" + name + "'");
}

std::vector<GoldenRecord> read_goldens(std::istream &in) {
    std::vector<GoldenRecord> records;
    std::set<std::string> ids;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw InvalidArgument("golden file: unexpected header on line " +
                                      std::to_string(line_no));
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> f = split_tabs(line);
        if (static_cast<int>(f.size()) != kColumns) {
            throw InvalidArgument("golden file: line " + std::to_string(line_no) + " has " +
                                  std::to_string(f.size()) + " fields, expected " +
                                  std::to_string(kColumns));
        }
        GoldenRecord r;
        r.id = f[0];
        r.tag = parse_provenance(f[1]);
        r.profile = parse_profile(f[2]);
        if (f[3] != "point" && f[3] != "optimize") {
            throw InvalidArgument("golden file: mode must be point or optimize on line " +
                                  std::to_string(line_no));
        }
        r.optimize = f[3] == "optimize";
        r.q = parse_number(f[4]);
        r.n_signals = parse_number(f[5]);
        r.alpha = f[6].empty() ? 0 : parse_number(f[6]);
        r.p_enc = f[7].empty() ? 0 : parse_number(f[7]);
        r.expect = f[8];
        r.r_prime = parse_optional(f[9]);
        r.r_eff = parse_optional(f[10]);
        r.s_xi = parse_optional(f[11]);
        r.qber = parse_optional(f[12]);
        if (!ids.insert(r.id).second) {
            throw InvalidArgument("golden file: duplicate id '" + r.id + "'");
        }
        records.push_back(std::move(r));
    }
    return records;
}

void write_goldens(std::ostream &out, std::vector<GoldenRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const GoldenRecord &a, const GoldenRecord &b) { return a.id < b.id; });
    out << "# Key-rate regression data. One record per line, tab separated.\n"
           "# tag: published (threshold in `expect`, outputs never rewritten),\n"
           "#   closed_form (exact value), computed (frozen output of this code).\n"
           "# profile: box-search profile that produced the outputs.\n"
           "# mode: point (alpha, penc given) or optimize (alpha, penc are the optimum).\n"
           "# n = inf means asymptotic mode. Default security parameters and EC\n"
           "# efficiency 1.2 throughout. Numbers are shortest round-trip decimals.\n"
        << kHeader << '\n';
    for (const auto &r : records) {
        bool have_params = !r.optimize || r.r_eff.has_value();
        out << r.id << '\t' << provenance_name(r.tag) << '\t' << profile_name(r.profile) << '\t'
            << (r.optimize ? "optimize" : "point") << '\t' << format_exact(r.q) << '\t'
            << format_exact(r.n_signals) << '\t'
            << (have_params ? format_exact(r.alpha) : "") << '\t'
            << (have_params ? format_exact(r.p_enc) : "") << '\t' << r.expect << '\t'
            << format_optional(r.r_prime) << '\t' << format_optional(r.r_eff) << '\t'
            << format_optional(r.s_xi) << '\t' << format_optional(r.qber) << '\n';
    }
}

GoldenRecord evaluate_golden(const GoldenRecord &record, SearchProfile profile, int jobs) {
    KeyRateOptions options;
    options.search.profile = profile;
    options.search.jobs = jobs;
    options.asymptotic = record.asymptotic();
    // N cancels in asymptotic mode; any finite value will do.
    double n = record.asymptotic() ? 1e6 : record.n_signals;
    SecurityEpsilons eps;

    GoldenRecord out = record;
    out.profile = profile;
    KeyRateReport report;
    if (record.optimize) {
        OptimizerConfig config;
        config.record_trace = false;
        config.jobs = jobs;
        OptimizationResult best = eb92::optimize(record.q, n, eps, options, config);
        report = best.best_report;
        out.alpha = best.best_alpha;
        out.p_enc = best.best_penc;
    } else {
        report = symmetric_key_rate(record.q, ProtocolParams(record.alpha, record.p_enc, n), eps,
                                    options);
    }
    out.r_prime = report.r_prime;
    out.r_eff = report.r_effective;
    out.s_xi = report.s_xi;
    out.qber = report.qber;
    return out;
}

bool meets_expectation(const GoldenRecord &record) {
    if (record.expect.empty()) {
        return true;
    }
    if (!record.r_eff) {
        return false;
    }
    if (record.expect == "r_eff>0") {
        return *record.r_eff > 0;
    }
    if (record.expect == "r_eff<=0") {
        return *record.r_eff <= 0;
    }
    throw InvalidArgument("unknown expect condition '" + record.expect + "'");
}

std::vector<GoldenDiff> diff_goldens(const GoldenRecord &before, const GoldenRecord &after,
                                     double rel_tol) {
    std::vector<GoldenDiff> diffs;
    auto check = [&](const char *field, std::optional<double> a, std::optional<double> b) {
        bool same = a.has_value() == b.has_value();
        if (same && a) {
            same = std::abs(*a - *b) <= rel_tol * std::max(1.0, std::abs(*a));
        }
        if (!same) {
            diffs.push_back({before.id, field, a, b});
        }
    };
    if (before.optimize) {
        check("alpha", before.alpha, after.alpha);
        check("penc", before.p_enc, after.p_enc);
    }
    check("r_prime", before.r_prime, after.r_prime);
    check("r_eff", before.r_eff, after.r_eff);
    check("s_xi", before.s_xi, after.s_xi);
    check("qber", before.qber, after.qber);
    return diffs;
}

}  // namespace eb92
