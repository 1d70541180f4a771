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


#include "alexglue/example_corpus.hpp"

#include <gtest/gtest.h>

#include "alexglue/curvature_verifier.hpp"
#include "alexglue/space_file.hpp"
#include "test_support.hpp"

namespace alexglue {
namespace {

using namespace testing_support;

class CorpusEntries : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusEntries, PiecesAreValid) {
  const auto e = corpus::make(GetParam());
  EXPECT_EQ(e.name, GetParam());
  EXPECT_FALSE(e.description.empty());
  for (const auto& p : e.pieces) {
    const auto r = validate_piece(p, 0.0, 1e-3);
    EXPECT_TRUE(r.passed()) << p.id();
  }
}

TEST_P(CorpusEntries, StructuralVerdictsMatchExpectations) {
  const auto e = corpus::make(GetParam());
  const auto gs = build(e, 0.02);
  const auto r = check_angle_criterion(gs);
  EXPECT_EQ(r.passed(), e.expected.angle_criterion == Status::kPass);
  EXPECT_EQ(!detect_isolated_gluing(gs).empty(), e.expected.isolated_gluing);
  EXPECT_EQ(check_path_isometry(gs).passed(), e.expected.path_isometry == Status::kPass);
  if (e.expected.angle_criterion == Status::kFail) EXPECT_FALSE(e.expected.fail_reasons.empty());
}

TEST_P(CorpusEntries, SampledVerdictMatchesExpectation) {
  const auto e = corpus::make(GetParam());
  if (!e.expected.toponogov) GTEST_SKIP() << "no sampled verdict asserted";
  const auto res = verify_toponogov(build(e, 0.01), 0.0, 400, 3);
  EXPECT_EQ(res.report.find("toponogov")->status, *e.expected.toponogov);
}

TEST_P(CorpusEntries, SpaceFileRoundTrip) {
  const auto e = corpus::make(GetParam());
  SpaceFile f{e.pieces, e.spec, {}};
  f.settings.h = 0.05;
  const auto text = to_json(f).dump();
  const auto back = parse_space(parse_json_text(text));
  EXPECT_EQ(to_json(back).dump(), text);
  ASSERT_EQ(back.pieces.size(), e.pieces.size());
  EXPECT_EQ(back.spec.arcs.size(), e.spec.arcs.size());
  EXPECT_EQ(back.spec.points.size(), e.spec.points.size());
  ASSERT_TRUE(back.settings.h);
  const auto a = build_quotient(e.pieces, e.spec, *back.settings.h);
  const auto b = build_quotient(back.pieces, back.spec, *back.settings.h);
  EXPECT_EQ(a.node_count(), b.node_count());
  EXPECT_EQ(a.class_count(), b.class_count());
}

INSTANTIATE_TEST_SUITE_P(All, CorpusEntries, ::testing::ValuesIn(corpus::entry_names()));

TEST(Corpus, UnknownEntry) {
  try {
    corpus::make("moebius_band");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownEntry);
  }
  EXPECT_THROW(corpus::make("comb_countable_points", {{"N", 0}}), Error);
}

TEST(Corpus, Parameters) {
  EXPECT_EQ(corpus::make("comb_countable_points", {{"N", 7}}).spec.points.size(), 7u);
  EXPECT_EQ(corpus::make("sector_disk_3", {{"stages", 1}}).spec.arcs.size(), 3u);
  EXPECT_GT(corpus::make("sector_disk_3").spec.arcs.size(), 3u);
  const auto coarse = corpus::make("unit_disk", {{"segments", 8}, {"rings", 2}});
  EXPECT_EQ(coarse.pieces[0].cycles()[0].edges.size(), 24u);
}

TEST(Corpus, ReflectionGluingCoversTheCircleOnce) {
  // Every rim point except P and Q lies on exactly one side of one arc pair.
  const auto e = corpus::make("doubled_half_disk");
  double total = 0.0;
  for (const auto& id : e.spec.arcs) {
    EXPECT_TRUE(id.reversed);
    EXPECT_DOUBLE_EQ(id.a.length, id.b.length);
    total += id.a.length + id.b.length;
  }
  EXPECT_NEAR(total, e.pieces[0].cycles()[0].length, 1e-12);
}

TEST(Corpus, DoubledSectorApex) {
  const auto e = corpus::doubled_sector(PiMultiple{3, 4});
  const auto gs = build(e, 0.02);
  const auto c = gs.class_at(PiecePoint{0, 0, {1, 0, 0}});
  ASSERT_TRUE(c);
  EXPECT_EQ(*glued_cone_angle(gs, *c).theta_sum.exact, (PiMultiple{3, 2}));
}

}  // namespace
}  // namespace alexglue
