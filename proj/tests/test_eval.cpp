// Copyright 2026 The mockdiff Authors. All Rights Reserved.
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


#include "mockdiff/eval.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "mockdiff/error.hpp"

namespace mockdiff {
namespace {

BoundingBox box_n(int i) { return {i * 100, 50, 60, 40}; }

ManifestEntry entry(const std::string& screen, int i, Subtype s) {
  InjectionRecord r;
  r.gc_id = "leaf_" + std::to_string(i);
  r.mockup_gc_id = "m/0/" + std::to_string(i);
  r.subtype = s;
  r.rule = InjectionRule::kLocation;
  r.mockup_box = box_n(i);
  if (s != Subtype::kMissingComponent) r.impl_box = box_n(i);
  return {screen, r};
}

DesignViolation reported(int i, Subtype s) {
  if (s == Subtype::kMissingComponent) {
    return DesignViolation(s, "m/0/" + std::to_string(i), box_n(i), std::nullopt,
                           std::nullopt, "");
  }
  if (s == Subtype::kExtraneousComponent) {
    return DesignViolation(s, std::nullopt, std::nullopt, "n" + std::to_string(i),
                           box_n(i), "");
  }
  return DesignViolation(s, "m/0/" + std::to_string(i), box_n(i), "n" + std::to_string(i),
                         box_n(i), "");
}

TEST(Score, NineHitsOneFalseAlarm) {
  std::vector<ManifestEntry> manifest;
  ScreenReport rep{"s000", {}};
  for (int i = 0; i < 9; ++i) {
    manifest.push_back(entry("s000", i, Subtype::kTranslationX));
    rep.violations.push_back(reported(i, Subtype::kTranslationX));
  }
  rep.violations.push_back(reported(12, Subtype::kTranslationX));
  const auto s = score({rep}, manifest);
  EXPECT_EQ(s.total.tp, 9);
  EXPECT_EQ(s.total.fp, 1);
  EXPECT_EQ(s.total.fn, 0);
  EXPECT_DOUBLE_EQ(s.dp(), 0.9);
  EXPECT_DOUBLE_EQ(s.cp(), 0.9);
  EXPECT_DOUBLE_EQ(s.r(), 1.0);
}

TEST(Score, MisclassificationCountsForDetectionOnly) {
  const std::vector<ManifestEntry> manifest = {entry("a", 0, Subtype::kImageColor),
                                               entry("a", 1, Subtype::kFontStyle)};
  const ScreenReport rep{"a", {reported(0, Subtype::kIncorrectImage),
                               reported(1, Subtype::kFontStyle)}};
  const auto s = score({rep}, manifest);
  EXPECT_DOUBLE_EQ(s.dp(), 1.0);
  EXPECT_DOUBLE_EQ(s.cp(), 0.5);
  EXPECT_DOUBLE_EQ(s.r(), 1.0);
  EXPECT_EQ(s.total.misclassified(), 1);
  EXPECT_EQ(s.per_subtype.at(Subtype::kImageColor).classified, 0);
  EXPECT_EQ(s.per_subtype.at(Subtype::kImageColor).tp, 1);

  EvalOptions coarse;
  coarse.category_level = true;
  EXPECT_DOUBLE_EQ(score({rep}, manifest, coarse).cp(), 1.0);
  const ScreenReport cross{"a", {reported(0, Subtype::kTranslationX)}};
  EXPECT_DOUBLE_EQ(score({cross}, manifest, coarse).cp(), 0.0);
}

TEST(Score, EmptyReports) {
  const std::vector<ManifestEntry> manifest = {entry("a", 0, Subtype::kSizeBoth),
                                               entry("b", 1, Subtype::kMissingComponent)};
  const auto s = score({{"a", {}}, {"b", {}}}, manifest);
  EXPECT_DOUBLE_EQ(s.r(), 0.0);
  EXPECT_DOUBLE_EQ(s.dp(), 1.0);
  EXPECT_EQ(s.total.fn, 2);
  EXPECT_DOUBLE_EQ(score({}, {}).dp(), 1.0);
}

TEST(Score, MatchNeedsHalfOverlapOnTheSameScreen) {
  const std::vector<ManifestEntry> manifest = {entry("a", 0, Subtype::kSizeBoth),
                                               entry("b", 1, Subtype::kSizeBoth)};
  // Right box, wrong screen.
  auto s = score({{"a", {reported(1, Subtype::kSizeBoth)}}, {"b", {}}}, manifest);
  EXPECT_EQ(s.total.tp, 0);
  EXPECT_EQ(s.total.fp, 1);
  // IOU exactly 0.5 still matches: 60x40 against a 60x40 box shifted by 20 px.
  const DesignViolation half(Subtype::kSizeBoth, "m", BoundingBox{20, 50, 60, 40}, "n",
                             BoundingBox{20, 50, 60, 40}, "");
  EXPECT_DOUBLE_EQ(iou(half.anchor_box(), box_n(0)), 0.5);
  s = score({{"a", {half}}}, manifest);
  EXPECT_EQ(s.total.tp, 1);
  const DesignViolation under(Subtype::kSizeBoth, "m", BoundingBox{21, 50, 60, 40}, "n",
                              BoundingBox{21, 50, 60, 40}, "");
  EXPECT_EQ(score({{"a", {under}}}, manifest).total.tp, 0);
}

TEST(Score, DuplicateReportsMatchOnce) {
  const std::vector<ManifestEntry> manifest = {entry("a", 0, Subtype::kTranslationX)};
  const auto s = score({{"a", {reported(0, Subtype::kTranslationX),
                               reported(0, Subtype::kSizeWidth)}}},
                       manifest);
  EXPECT_EQ(s.total.tp, 1);
  EXPECT_EQ(s.total.fp, 1);
  EXPECT_EQ(s.total.classified, 1);
}

TEST(Score, UnknownScreenIsAnError) {
  try {
    score({{"zzz", {}}}, {entry("a", 0, Subtype::kSizeBoth)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEvalError);
  }
  EvalOptions opts;
  opts.screens = {"zzz"};
  EXPECT_EQ(score({{"zzz", {reported(3, Subtype::kSizeBoth)}}},
                  {entry("a", 0, Subtype::kSizeBoth)}, opts)
                .total.fp,
            1);
}

TEST(ScoreProperty, PermutationInvariantAndSpuriousReportsNeverHelp) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ManifestEntry> manifest;
    std::vector<ScreenReport> reports;
    for (int sc = 0; sc < 3; ++sc) {
      const std::string id = "s" + std::to_string(sc);
      ScreenReport rep{id, {}};
      for (int i = 0; i < 6; ++i) {
        const auto s = kAllSubtypes[gen() % 14];
        const bool inject = gen() % 2;
        if (inject && s != Subtype::kExtraneousComponent) {
          manifest.push_back(entry(id, i, s));
        }
        if (gen() % 3) rep.violations.push_back(reported(i, kAllSubtypes[gen() % 14]));
      }
      reports.push_back(rep);
    }
    const EvalOptions opts{false, {"s0", "s1", "s2"}};
    const auto base = score(reports, manifest, opts);
    // Independent tally: per screen and slot, one report and one entry at most.
    int tp = 0, fp = 0, fn = 0;
    for (const auto& rep : reports) {
      for (const auto& v : rep.violations) {
        const bool hit = std::any_of(manifest.begin(), manifest.end(), [&](const auto& e) {
          return e.screen_id == rep.screen && e.record.mockup_box == v.anchor_box();
        });
        hit ? ++tp : ++fp;
      }
    }
    fn = static_cast<int>(manifest.size()) - tp;
    EXPECT_EQ(base.total.tp, tp);
    EXPECT_EQ(base.total.fp, fp);
    EXPECT_EQ(base.total.fn, fn);

    auto shuffled = reports;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    for (auto& r : shuffled) std::shuffle(r.violations.begin(), r.violations.end(), gen);
    auto m2 = manifest;
    std::shuffle(m2.begin(), m2.end(), gen);
    const auto again = score(shuffled, m2, opts);
    EXPECT_EQ(again.total.tp, base.total.tp);
    EXPECT_EQ(again.total.classified, base.total.classified);
    EXPECT_EQ(again.total.fp, base.total.fp);

    auto noisy = reports;
    noisy[0].violations.push_back(reported(9, Subtype::kIncorrectImage));
    const auto more = score(noisy, manifest, opts);
    EXPECT_LE(more.r(), base.r());
    EXPECT_LE(more.dp(), base.dp());
  }
}

TEST(Summary, TableAndJsonAgree) {
  const std::vector<ManifestEntry> manifest = {entry("a", 0, Subtype::kFontColor)};
  const auto s = score({{"a", {reported(0, Subtype::kFontColor)}}}, manifest);
  const auto j = to_json(s);
  EXPECT_DOUBLE_EQ(j["overall"]["dp"].get<double>(), 1.0);
  EXPECT_EQ(j["per_subtype"]["FontColor"]["tp"], 1);
  const auto table = summary_table(s);
  EXPECT_NE(table.find("FontColor"), std::string::npos);
  EXPECT_NE(table.find("overall"), std::string::npos);
}

}  // namespace
}  // namespace mockdiff
