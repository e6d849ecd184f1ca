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


#include "mockdiff/geometry.hpp"

#include <random>

#include <gtest/gtest.h>

namespace mockdiff {
namespace {

TEST(BoundingBox, EdgesAndArea) {
  const BoundingBox b{10, 20, 30, 40};
  EXPECT_EQ(b.right(), 40);
  EXPECT_EQ(b.bottom(), 60);
  EXPECT_EQ(b.area(), 1200);
  EXPECT_FALSE(b.empty());
  EXPECT_TRUE((BoundingBox{5, 5, 0, 10}.empty()));
}

TEST(BoundingBox, ContainsIsInclusiveOfEdges) {
  const BoundingBox outer{0, 0, 100, 100};
  EXPECT_TRUE(outer.contains(outer));
  EXPECT_TRUE(outer.contains({90, 90, 10, 10}));
  EXPECT_FALSE(outer.contains({91, 90, 10, 10}));
  EXPECT_TRUE(outer.contains_point(99, 99));
  EXPECT_FALSE(outer.contains_point(100, 0));
}

TEST(Intersect, DisjointAndTouchingBoxesHaveNoOverlap) {
  EXPECT_FALSE(intersect({0, 0, 10, 10}, {10, 0, 10, 10}).has_value());
  EXPECT_FALSE(intersect({0, 0, 10, 10}, {50, 50, 1, 1}).has_value());
  EXPECT_EQ(*intersect({0, 0, 10, 10}, {5, 5, 10, 10}),
            (BoundingBox{5, 5, 5, 5}));
}

TEST(Iou, HandComputedCases) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  // Overlap 5x10 = 50, union 150.
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 10, 10}), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 5, 5}), 0.0);
  EXPECT_DOUBLE_EQ(iou({3, 3, 0, 0}, {3, 3, 0, 0}), 1.0);
}

TEST(ClampInto, ClipsOverflowAndCollapsesOutsiders) {
  const BoundingBox parent{0, 0, 100, 50};
  EXPECT_EQ(clamp_into({90, 10, 11, 10}, parent), (BoundingBox{90, 10, 10, 10}));
  EXPECT_EQ(clamp_into({-1, -1, 20, 20}, parent), (BoundingBox{0, 0, 19, 19}));
  const auto out = clamp_into({200, 10, 10, 10}, parent);
  EXPECT_EQ(out.area(), 0);
  EXPECT_TRUE(parent.contains(out));
}

TEST(GeometryProperty, IouSymmetricBoundedAndUnionContainsBoth) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> pos(-20, 120);
  std::uniform_int_distribution<int> size(0, 60);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a{pos(gen), pos(gen), size(gen), size(gen)};
    const BoundingBox b{pos(gen), pos(gen), size(gen), size(gen)};
    const double ab = iou(a, b);
    EXPECT_DOUBLE_EQ(ab, iou(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    const auto u = unite(a, b);
    EXPECT_TRUE(u.contains(a) && u.contains(b));
    const BoundingBox parent{0, 0, 100, 100};
    EXPECT_TRUE(parent.contains(clamp_into(a, parent)));
    if (parent.contains(a)) EXPECT_EQ(clamp_into(a, parent), a);
  }
}

}  // namespace
}  // namespace mockdiff
