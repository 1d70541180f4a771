// Copyright 2026 The alexglue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "alexglue/cli.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "alexglue/space_file.hpp"

namespace alexglue {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("alexglue_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  std::string export_entry(const std::string& name, const std::vector<std::string>& extra = {}) const {
    std::vector<std::string> args{"examples", "export", name};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return write(name + ".json", r.out);
  }

  fs::path dir_;
};

TEST_F(Cli, ExamplesList) {
  const auto r = run({"examples", "list"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  ASSERT_EQ(j["entries"].size(), 8u);
  EXPECT_EQ(j["entries"][0]["name"], "sector_disk_3");
  EXPECT_EQ(j["entries"][2]["expected"]["angle_criterion"], "fail");
  EXPECT_EQ(run({"--format", "csv", "examples", "list"}).out.substr(0, 16), "name,description");
}

TEST_F(Cli, CheckSectorDiskPasses) {
  const auto r = run({"check", export_entry("sector_disk_3")});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = r.json();
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["tool"]["name"], "alexglue");
  EXPECT_TRUE(j["input"]["digest"].get<std::string>().starts_with("fnv1a64:"));
  EXPECT_TRUE(j["settings"]["h"].is_number());
}

TEST_F(Cli, CheckPairwiseNamesTheApex) {
  const auto r = run({"check", export_entry("pairwise_two_sectors")});
  EXPECT_EQ(r.code, 1);
  const auto j = r.json();
  EXPECT_EQ(j["status"], "fail");
  bool found = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] != "angle_bound") continue;
    EXPECT_EQ(c["status"], "fail");
    for (const auto& item : c["items"]) {
      const auto loc = item["location"].get<std::string>();
      const auto detail = item["detail"].get<std::string>();
      found |= loc.find("X1 vertex 0") != std::string::npos && detail.find("4/3 pi > pi") != std::string::npos;
    }
  }
  EXPECT_TRUE(found) << r.out;
}

TEST_F(Cli, CounterexamplesExitOne) {
  for (const char* name : {"two_squares_one_point", "comb_countable_points"}) {
    EXPECT_EQ(run({"check", export_entry(name)}).code, 1) << name;
  }
}

TEST_F(Cli, MalformedJsonExitsTwo) {
  const auto file = write("bad.json", "{\"schema_version\": 1, \"pieces\": [");
  const auto r = run({"dist", file, "S/v0", "S/v1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("alexglue:"), std::string::npos);
}

TEST_F(Cli, UnknownFieldsAreRejected) {
  auto j = Json::parse(run({"examples", "export", "square_doubling"}).out);
  j["pieces"][0]["colour"] = "red";
  const auto r = run({"validate", write("extra.json", j.dump())});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos) << r.err;

  auto k = Json::parse(run({"examples", "export", "square_doubling"}).out);
  k["gluing"]["arcs"][0]["a"]["piece"] = "nope";
  EXPECT_EQ(run({"validate", write("ref.json", k.dump())}).code, 2);

  auto v = Json::parse(run({"examples", "export", "square_doubling"}).out);
  v["schema_version"] = 7;
  EXPECT_EQ(run({"check", write("version.json", v.dump())}).code, 2);
}

TEST_F(Cli, ValidateReportsBadPieces) {
  EXPECT_EQ(run({"validate", export_entry("petrunin_pair")}).code, 0);
  const std::string bad = R"({"schema_version": 1, "pieces": [{"id": "T", "vertices": [{}, {}, {}],
      "triangles": [{"v": [0, 1, 2], "lengths": [1, 1, 3]}]}]})";
  const auto r = run({"validate", write("tri.json", bad)});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("InvalidTriangle"), std::string::npos);
}

TEST_F(Cli, ExportRoundTrip) {
  const auto first = run({"--resolution", "0.05", "examples", "export", "doubled_half_disk"});
  ASSERT_EQ(first.code, 0);
  const auto space = parse_space(Json::parse(first.out));
  EXPECT_EQ(to_json(space).dump(2) + "\n", first.out);
  EXPECT_EQ(*space.settings.h, 0.05);
  EXPECT_EQ(run({"examples", "export", "nonexistent"}).code, 2);
  EXPECT_EQ(run({"examples", "export", "comb_countable_points", "--param", "N=x"}).code, 2);
  const auto comb = Json::parse(run({"examples", "export", "comb_countable_points", "--param", "N=5"}).out);
  EXPECT_EQ(comb["gluing"]["points"].size(), 5u);
}

TEST_F(Cli, DistOnTheDisk) {
  const auto file = export_entry("unit_disk");
  // Opposite rim vertices of the 72-gon, half the perimeter apart.
  std::ostringstream half;
  half.precision(17);
  half << 36 * 2 * std::sin(std::numbers::pi / 72);
  const auto j = run({"--resolution", "0.01", "dist", file, "D/c0/0", "D/c0/" + half.str()}).json();
  EXPECT_TRUE(j["result"]["connected"].get<bool>());
  EXPECT_NEAR(j["result"]["distance"].get<double>(), 2.0, 5 * 0.01);
  const auto two = export_entry("two_squares_one_point");
  const auto far = run({"dist", two, "S1/t0/0.2,0.3,0.5", "S2/c0/0.5"}).json();
  EXPECT_TRUE(far["result"]["connected"].get<bool>());
  EXPECT_TRUE(far["result"]["piece_distance"].is_null());
  EXPECT_EQ(run({"dist", file, "D/v9999", "D/v0"}).code, 2);
  EXPECT_EQ(run({"dist", file, "Q/v0", "D/v0"}).code, 2);
  EXPECT_EQ(run({"dist", file, "D/t0/0.5,0.6,0.1", "D/v0"}).code, 2);
}

TEST_F(Cli, ClassifyHalfDisk) {
  const auto j = run({"--resolution", "0.02", "classify", export_entry("doubled_half_disk")}).json();
  EXPECT_EQ(j["result"]["counts"]["F"], 2);
  std::size_t singles = 0;
  for (const auto& c : j["result"]["classes"]) singles += c["multiplicity"] == 1;
  EXPECT_EQ(singles, 2u);
  const auto csv = run({"--resolution", "0.02", "--format", "csv", "classify", path("doubled_half_disk.json")});
  EXPECT_TRUE(csv.out.starts_with("node,class,piece,"));
}

TEST_F(Cli, VerifyIsDeterministic) {
  const auto file = export_entry("doubled_half_disk");
  const std::vector<std::string> args{"--resolution", "0.03", "--samples", "200", "--seed", "9", "verify", file};
  const auto a = run(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(run(args).out, a.out);
  ::setenv("ALEXGLUE_THREADS", "3", 1);
  const auto b = run(args);
  ::unsetenv("ALEXGLUE_THREADS");
  EXPECT_EQ(b.out, a.out);
  auto other = args;
  other[5] = "10";
  EXPECT_NE(run(other).out, a.out);
  EXPECT_GE(a.json()["result"]["accepted_samples"].get<int>(), 200);
}

TEST_F(Cli, VerifyPairwiseFails) {
  const auto r = run({"--resolution", "0.01", "--samples", "1000", "verify", export_entry("pairwise_two_sectors")});
  EXPECT_EQ(r.code, 1);
  const auto csv = run({"--resolution", "0.01", "--samples", "1000", "--format", "csv", "verify",
                        path("pairwise_two_sectors.json")});
  EXPECT_TRUE(csv.out.starts_with("index,p,a,b,c,"));
  EXPECT_NE(csv.out.find(",1\n"), std::string::npos);
}

TEST_F(Cli, OutFlagWritesTheReport) {
  const auto file = export_entry("square_doubling");
  const auto target = path("report.json");
  const auto r = run({"--out", target, "check", file});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  const auto j = Json::parse(in);
  EXPECT_EQ(j["status"], "pass");
}

TEST_F(Cli, MissingFileExitsTwo) { EXPECT_EQ(run({"check", path("missing.json")}).code, 2); }

TEST_F(Cli, ReadsStandardInput) {
  std::istringstream in(run({"examples", "export", "square_doubling"}).out);
  auto* old = std::cin.rdbuf(in.rdbuf());
  const auto r = run({"check", "-"});
  std::cin.rdbuf(old);
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, LiftAcrossTheSeam) {
  const auto file = export_entry("square_doubling");
  const auto path_file = write("path.json", R"({"segments": [["S1/t0/0.5,0,0.5", "S1/c0/0.5"],
                                                             ["S2/c0/0.5", "S2/t1/0.3,0.3,0.4"]]})");
  const auto r = run({"--resolution", "0.05", "lift", file, path_file});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto j = r.json();
  EXPECT_NEAR(j["result"]["lifted_length"].get<double>(), j["result"]["input_length"].get<double>(), 1e-12);
  EXPECT_EQ(j["result"]["sheet_switches"], Json::array({1}));
}

TEST_F(Cli, LiftAmbiguityIsAFailedCheck) {
  const auto file = export_entry("sector_disk_3", {"--param", "stages=1"});
  const auto path_file = write("path.json", R"({"segments": [["X1/t0/0.4,0.3,0.3", "X1/v0"],
                                                             ["X2/v0", "X2/c0/0.05"]]})");
  const auto r = run({"--resolution", "0.02", "lift", file, path_file});
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_NE(r.out.find("LiftAmbiguous"), std::string::npos);
}

TEST_F(Cli, RenderEmitsSvgWithStableIds) {
  const auto file = export_entry("pairwise_two_sectors");
  const auto r = run({"--resolution", "0.01", "--samples", "1000", "render", file});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("<?xml"));
  EXPECT_NE(r.out.find("<svg"), std::string::npos);
  EXPECT_NE(r.out.find("version=\"1.1\""), std::string::npos);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
  EXPECT_NE(r.out.find("id=\"seam-0-a\""), std::string::npos);
  EXPECT_NE(r.out.find("id=\"seam-0-b\""), std::string::npos);
  EXPECT_NE(r.out.find("id=\"piece-0\""), std::string::npos);
  EXPECT_NE(r.out.find("id=\"sample-"), std::string::npos);
  EXPECT_EQ(run({"--resolution", "0.01", "--samples", "1000", "render", file}).out, r.out);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "examples", "list"}).code, 2);
  EXPECT_EQ(run({"--resolution", "-1", "examples", "list"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

}  // namespace
}  // namespace alexglue
