// SPDX-License-Identifier: Apache-2.0
//
// hmimo - correlation, efficiency and capacity models for dense MIMO arrays
// Copyright (C) 2026 The hmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <hmimo/pattern_io.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace hmimo;

namespace
{
    std::string fixture(const std::string &name) { return std::string(HMIMO_FIXTURE_DIR) + "/" + name; }

    std::size_t error_line(const std::string &name)
    {
        try
        {
            load_pattern_file(fixture(name));
        }
        catch (const ParseError &e)
        {
            EXPECT_NE(std::string(e.what()).find(name + ":" + std::to_string(e.line()) + ":"), std::string::npos) << e.what();
            return e.line();
        }
        ADD_FAILURE() << name << " parsed without error";
        return 0;
    }

    void expect_same(const RadiationPattern &a, const RadiationPattern &b)
    {
        EXPECT_EQ(a.grid().theta_deg(), b.grid().theta_deg());
        EXPECT_EQ(a.grid().phi_deg(), b.grid().phi_deg());
        EXPECT_EQ(a.e_theta(), b.e_theta());
        EXPECT_EQ(a.e_phi(), b.e_phi());
    }
} // namespace

TEST(PatternCsv, SmallFixture)
{
    const auto p = load_pattern_file(fixture("small_pattern.csv"));
    EXPECT_EQ(p.grid().n_theta(), 3u);
    EXPECT_EQ(p.grid().n_phi(), 4u);
    EXPECT_EQ(p.e_theta()[p.grid().index(1, 1)], cplx(0.707107, 0.25));
    EXPECT_EQ(p.e_phi()[p.grid().index(1, 3)], cplx(0.0, -0.5));
}

TEST(PatternCsv, FixtureRoundTripIsBitExact)
{
    const auto p = load_pattern_file(fixture("small_pattern.csv"));
    std::stringstream buf;
    write_pattern_csv(p, buf);
    expect_same(p, read_pattern_csv(buf));
}

TEST(PatternCsv, FullSphereRoundTrip)
{
    const auto p = translate_pattern(synthesize_isolated_pattern(0.75, 0.95), Vec3(0.123, -0.4, 0.01));
    const auto path = std::filesystem::temp_directory_path() / "hmimo_pattern_roundtrip.csv";
    save_pattern_file(p, path);
    const auto q = load_pattern_file(path);
    std::filesystem::remove(path);
    EXPECT_EQ(q.grid().n_theta(), 181u);
    EXPECT_EQ(q.grid().n_phi(), 360u);
    EXPECT_EQ(q.grid().size(), 181u * 360u);
    expect_same(p, q);
}

TEST(PatternCsv, MalformedFilesNameTheLine)
{
    EXPECT_EQ(error_line("bad_header.csv"), 2u);
    EXPECT_EQ(error_line("bad_number.csv"), 8u);
    EXPECT_EQ(error_line("bad_missing_column.csv"), 9u);
    EXPECT_EQ(error_line("bad_extra_column.csv"), 7u);
    EXPECT_EQ(error_line("bad_duplicate.csv"), 10u);
    EXPECT_EQ(error_line("bad_nonfinite.csv"), 6u);
    EXPECT_EQ(error_line("bad_nonuniform.csv"), 11u);
}

TEST(PatternCsv, InlineErrors)
{
    auto parse = [](const std::string &text)
    {
        std::istringstream in(text);
        return read_pattern_csv(in);
    };
    const std::string h = std::string(pattern_csv_header) + "\n";
    // Incomplete last theta row.
    EXPECT_THROW(parse(h + "0,0,1,0,0,0\n0,10,1,0,0,0\n10,0,1,0,0,0\n"), ParseError);
    // Theta going backwards.
    EXPECT_THROW(parse(h + "10,0,1,0,0,0\n10,10,1,0,0,0\n0,0,1,0,0,0\n0,10,1,0,0,0\n"), ParseError);
    // Rows out of phi order within a theta row.
    EXPECT_THROW(parse(h + "0,10,1,0,0,0\n0,0,1,0,0,0\n10,0,1,0,0,0\n10,10,1,0,0,0\n"), ParseError);
    // Single theta sample.
    EXPECT_THROW(parse(h + "0,0,1,0,0,0\n0,10,1,0,0,0\n"), ParseError);
    // Empty / header only / zero power.
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse(h), ParseError);
    EXPECT_THROW(parse(h + "0,0,0,0,0,0\n0,10,0,0,0,0\n10,0,0,0,0,0\n10,10,0,0,0,0\n"), ParseError);
    EXPECT_NO_THROW(parse("# c\n\n" + h + "0,0,1,0,0,0\n0,10,1,0,0,0\n\n10,0,1,0,0,0\n10,10,1,0,0,0\n"));
    EXPECT_THROW(load_pattern_file(fixture("missing.csv")), std::runtime_error);
}
