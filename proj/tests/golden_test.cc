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

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eb92/csv.h"
#include "eb92/error.h"

namespace eb92 {
namespace {

TEST(FormatNumber, TenSignificantDigitsLocaleFree) {
    EXPECT_EQ(format_number(0.1234567890123), "0.123456789");
    EXPECT_EQ(format_number(1e8), "100000000");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_number(2.5e-12), "2.5e-12");
}

TEST(FormatExact, RoundTrips) {
    for (double v : {0.1, 1.0 / 3, 6.02214076e23, -2.5e-300, 0.0}) {
        EXPECT_EQ(parse_number(format_exact(v)), v);
    }
    EXPECT_THROW(parse_number("1.5x"), InvalidArgument);
    EXPECT_TRUE(std::isinf(parse_number("inf")));
}

TEST(KeyRateCsv, HeaderAndFailedRow) {
    EXPECT_EQ(join_row(key_rate_columns(), ','),
              "q,n,alpha,penc,s_xi,qber,leak_per_bit,delta_bits,r_prime,r_eff,reason");
    auto row = failed_fields(0.02, 1e6, 0.3, std::nullopt, "bad, thing");
    EXPECT_EQ(join_row(row, ','), "0.02,1000000,0.3,,,,,,,,bad  thing");
}

TEST(Goldens, ReadWriteRoundTripSorted) {
    GoldenRecord b;
    b.id = "b";
    b.q = 0.03;
    b.n_signals = 1e8;
    b.alpha = 0.6;
    b.p_enc = 0.8;
    b.r_eff = 1.0 / 3;
    b.r_prime = 0.5;
    b.s_xi = 0.7;
    b.qber = 0.04;
    GoldenRecord a = b;
    a.id = "a";
    a.tag = Provenance::kPublished;
    a.optimize = true;
    a.expect = "r_eff>0";
    a.n_signals = std::numeric_limits<double>::infinity();
    std::stringstream ss;
    write_goldens(ss, {b, a});
    std::vector<GoldenRecord> back = read_goldens(ss);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].id, "a");
    EXPECT_TRUE(back[0].asymptotic());
    EXPECT_EQ(back[0].tag, Provenance::kPublished);
    EXPECT_EQ(back[1].r_eff, 1.0 / 3);
    EXPECT_TRUE(diff_goldens(b, back[1], 0).empty());
}

TEST(Goldens, RejectsDuplicatesAndBadRows) {
    std::stringstream dup;
    GoldenRecord r;
    r.id = "x";
    write_goldens(dup, {r, r});
    EXPECT_THROW(read_goldens(dup), InvalidArgument);
    std::stringstream bad("id\tnope\n");
    EXPECT_THROW(read_goldens(bad), InvalidArgument);
}

TEST(Goldens, EveryRecordHasOneTagAndProfile) {
    std::ifstream in(EB92_GOLDEN_FILE);
    ASSERT_TRUE(in);
    std::vector<GoldenRecord> recs = read_goldens(in);
    EXPECT_GE(recs.size(), 5u);
    for (const auto &r : recs) {
        EXPECT_TRUE(r.r_eff.has_value()) << r.id;
        if (r.tag == Provenance::kPublished) {
            EXPECT_FALSE(r.expect.empty()) << r.id;
        }
    }
}

TEST(Goldens, FinerFreeVariableGridOnlyLowersBound) {
    for (double q : {0.02, 0.05, 0.09}) {
        for (double alpha : {0.3, 0.6}) {
            ChannelStatistics s = symmetric_statistics(q, alpha);
            FreeVariableObjective obj(s, alpha);
            double coarse = minimize_free_variable(obj, 33)->value;
            double fine = minimize_free_variable(obj, 65)->value;
            EXPECT_LE(fine, coarse + 1e-12);
        }
    }
}

TEST(Goldens, MeetsExpectation) {
    GoldenRecord r;
    r.expect = "r_eff>0";
    r.r_eff = 0.1;
    EXPECT_TRUE(meets_expectation(r));
    r.r_eff = 0;
    EXPECT_FALSE(meets_expectation(r));
    r.expect = "r_eff<=0";
    EXPECT_TRUE(meets_expectation(r));
    r.expect = "bogus";
    EXPECT_THROW(meets_expectation(r), InvalidArgument);
}

TEST(GoldensTool, FastProfileDoesNotOverwriteThoroughRecords) {
    auto copy = std::filesystem::temp_directory_path() / "eb92_golden_guard.tsv";
    std::filesystem::copy_file(EB92_GOLDEN_FILE, copy,
                               std::filesystem::copy_options::overwrite_existing);
    std::string cmd = std::string(EB92_GOLDENS_BINARY) + " regenerate --profile fast --file " +
                      copy.string() + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    EXPECT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 1);
    std::ifstream a(EB92_GOLDEN_FILE), b(copy);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_EQ(sa.str(), sb.str());
    std::filesystem::remove(copy);
}

}  // namespace
}  // namespace eb92
