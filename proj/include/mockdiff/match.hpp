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

// Leaf-level correspondence between a mock-up and its implementation.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mockdiff/model.hpp"

namespace mockdiff {

struct MatchedPair {
  std::string mockup_id;
  std::string impl_id;
  std::int64_t gamma = 0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct Merge {
  std::vector<std::string> merged_from;
  std::string merged_into;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<std::string> unmatched_mockup;
  std::vector<std::string> unmatched_impl;
  std::vector<Merge> merges;
};

// L1 distance over (x, y, w, h); 0 iff the boxes are identical.
std::int64_t similarity(const GuiComponent& a, const GuiComponent& b);
std::int64_t similarity(const BoundingBox& a, const BoundingBox& b);

// Collapses mock-up leaves whose IOU exceeds `iou_threshold` into one
// component, repeating until no such pair remains.
std::vector<GuiComponent> merge_overlapping(
    std::vector<GuiComponent> mockup_leaves, std::vector<Merge>* merges,
    double iou_threshold = 0.5);

// Merges a mock-up leaf with its nearest mock-up neighbour whenever that
// neighbour is strictly closer than the nearest implementation leaf. The
// merged box is the union, the text is the reading-order concatenation.
// Repeats until a full pass makes no merge.
std::vector<GuiComponent> merge_fragmented(
    std::vector<GuiComponent> mockup_leaves,
    const std::vector<GuiComponent>& impl_leaves,
    std::vector<Merge>* merges = nullptr);

// Greedy one-to-one assignment: every cross pair with gamma <= mt, taken in
// ascending (gamma, mock-up id, impl id) order while both ends are free.
MatchResult match_leaves(const std::vector<GuiComponent>& mockup_leaves,
                         const std::vector<GuiComponent>& impl_leaves,
                         double mt);

}  // namespace mockdiff
