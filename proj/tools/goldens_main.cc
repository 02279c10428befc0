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

// Checks or regenerates the key-rate regression data.
//
//   eb92_goldens check --file tests/golden/key_rates.tsv
//   eb92_goldens regenerate --file tests/golden/key_rates.tsv --profile thorough
//
// Exit codes: 0 ok, 1 usage error or refused overwrite, 3 mismatch or a
// violated published threshold.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eb92/csv.h"
#include "eb92/error.h"
#include "eb92/golden.h"
#include "eb92/validation.h"

namespace {

std::string show(const std::optional<double> &v) {
    return v ? eb92::format_number(*v, 17) : "(none)";
}

void print_diffs(const std::vector<eb92::GoldenDiff> &diffs) {
    for (const auto &d : diffs) {
        std::cout << "  " << d.id << " " << d.field << ": " << show(d.before) << " -> "
                  << show(d.after) << '\n';
    }
}

std::vector<eb92::GoldenRecord> load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw eb92::InvalidArgument("cannot read '" + path + "'");
    }
    return eb92::read_goldens(in);
}

int check(const std::string &path, int jobs) {
    bool ok = true;
    for (const auto &rec : load(path)) {
        eb92::GoldenRecord now = eb92::evaluate_golden(rec, rec.profile, jobs);
        if (!eb92::meets_expectation(now)) {
            std::cout << "FAIL " << rec.id << ": expected " << rec.expect
                      << ", r_eff = " << show(now.r_eff) << '\n';
            ok = false;
            continue;
        }
        if (rec.tag == eb92::Provenance::kPublished) {
            std::cout << "ok   " << rec.id << " (" << rec.expect << ", r_eff = " << show(now.r_eff)
                      << ")\n";
            continue;
        }
        std::vector<eb92::GoldenDiff> diffs = eb92::diff_goldens(rec, now);
        if (diffs.empty()) {
            std::cout << "ok   " << rec.id << '\n';
        } else {
            std::cout << "FAIL " << rec.id << '\n';
            print_diffs(diffs);
            ok = false;
        }
    }
    return ok ? 0 : 3;
}

int regenerate(const std::string &path, eb92::SearchProfile profile, int jobs) {
    std::vector<eb92::GoldenRecord> records = load(path);
    for (const auto &rec : records) {
        if (profile == eb92::SearchProfile::kFast &&
            rec.profile == eb92::SearchProfile::kThorough && rec.tag != eb92::Provenance::kPublished &&
            rec.r_eff) {
            std::cerr << "refusing to overwrite thorough-profile record " << rec.id
                      << " with fast-profile output\n";
            return 1;
        }
    }
    eb92::ValidationReport validation = eb92::run_validation({});
    if (!validation.passed()) {
        std::cerr << "validation suite fails; not regenerating\n";
        return 3;
    }

    std::vector<eb92::GoldenRecord> updated;
    std::vector<eb92::GoldenDiff> diffs;
    bool thresholds_ok = true;
    for (const auto &rec : records) {
        bool fresh = !rec.r_eff.has_value();
        // Published thresholds and closed-form values are checked with the
        // profile they were recorded under and only filled in when empty.
        bool frozen = rec.tag != eb92::Provenance::kComputed;
        eb92::GoldenRecord now =
            eb92::evaluate_golden(rec, frozen ? rec.profile : profile, jobs);
        if (!eb92::meets_expectation(now)) {
            std::cout << "published threshold violated: " << rec.id << " expects " << rec.expect
                      << '\n';
            print_diffs(eb92::diff_goldens(rec, now, 0));
            thresholds_ok = false;
        }
        if (rec.tag == eb92::Provenance::kClosedForm && !fresh) {
            auto d = eb92::diff_goldens(rec, now);
            if (!d.empty()) {
                std::cout << "closed-form value not reproduced: " << rec.id << '\n';
                print_diffs(d);
                thresholds_ok = false;
            }
        }
        if (frozen && !fresh) {
            updated.push_back(rec);
            continue;
        }
        if (!fresh) {
            auto d = eb92::diff_goldens(rec, now);
            diffs.insert(diffs.end(), d.begin(), d.end());
        }
        updated.push_back(now);
    }
    if (!thresholds_ok) {
        std::cerr << "aborting; " << path << " left unchanged\n";
        return 3;
    }
    std::ostringstream text;
    eb92::write_goldens(text, updated);
    std::ofstream out(path, std::ios::trunc);
    out << text.str();
    std::cout << diffs.size() << " changed field(s)\n";
    print_diffs(diffs);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app("Key-rate regression data", "eb92_goldens");
    app.require_subcommand(1);
    std::string file;
    std::string profile = "thorough";
    int jobs = 0;
    auto *check_cmd = app.add_subcommand("check", "Recompute every record and compare");
    auto *regen_cmd = app.add_subcommand("regenerate", "Recompute and rewrite the file");
    for (auto *sub : {check_cmd, regen_cmd}) {
        sub->add_option("--file", file, "Golden TSV file")->required();
        sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::NonNegativeNumber);
    }
    regen_cmd->add_option("--profile", profile, "Search profile for the new values")
        ->check(CLI::IsMember({"fast", "thorough"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        if (*check_cmd) {
            return check(file, jobs);
        }
        return regenerate(file, eb92::parse_profile(profile), jobs);
    } catch (const eb92::InvalidArgument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 2;
    }
}
