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

#include "mockdiff/match.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <tuple>

namespace mockdiff {

std::int64_t similarity(const BoundingBox& a, const BoundingBox& b) {
  return std::llabs(std::int64_t{a.x} - b.x) + std::llabs(std::int64_t{a.y} - b.y) +
         std::llabs(std::int64_t{a.w} - b.w) + std::llabs(std::int64_t{a.h} - b.h);
}

std::int64_t similarity(const GuiComponent& a, const GuiComponent& b) {
  return similarity(a.box, b.box);
}

namespace {

GuiComponent merge_pair(const GuiComponent& a, const GuiComponent& b) {
  // Reading order: top-to-bottom, then left-to-right.
  const bool a_first = std::tie(a.box.y, a.box.x) <= std::tie(b.box.y, b.box.x);
  const GuiComponent& first = a_first ? a : b;
  const GuiComponent& second = a_first ? b : a;

  GuiComponent out;
  out.id = first.id + "+" + second.id;
  out.box = unite(first.box, second.box);
  if (first.text || second.text) {
    std::string text = first.text.value_or("");
    if (second.text) {
      if (!text.empty()) text += " ";
      text += *second.text;
    }
    out.text = text;
  }
  out.class_name = first.class_name ? first.class_name : second.class_name;
  out.resource_id = first.resource_id ? first.resource_id : second.resource_id;
  out.name = first.name ? first.name : second.name;
  out.font = first.font ? first.font : second.font;
  return out;
}

void merge_at(std::vector<GuiComponent>& leaves, std::size_t i, std::size_t j,
              std::vector<Merge>* merges) {
  if (i > j) std::swap(i, j);
  auto merged = merge_pair(leaves[i], leaves[j]);
  if (merges) merges->push_back({{leaves[i].id, leaves[j].id}, merged.id});
  leaves[i] = std::move(merged);
  leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(j));
}

}  // namespace

std::vector<GuiComponent> merge_overlapping(
    std::vector<GuiComponent> leaves, std::vector<Merge>* merges,
    double iou_threshold) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < leaves.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < leaves.size(); ++j) {
        if (iou(leaves[i].box, leaves[j].box) > iou_threshold) {
          merge_at(leaves, i, j, merges);
          changed = true;
          break;
        }
      }
    }
  }
  return leaves;
}

std::vector<GuiComponent> merge_fragmented(
    std::vector<GuiComponent> leaves,
    const std::vector<GuiComponent>& impl_leaves, std::vector<Merge>* merges) {
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  bool changed = true;
  while (changed && leaves.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      std::size_t nearest = i;
      std::int64_t nearest_mockup = kInf;
      for (std::size_t j = 0; j < leaves.size(); ++j) {
        if (j == i) continue;
        const auto g = similarity(leaves[i], leaves[j]);
        if (g < nearest_mockup) {
          nearest_mockup = g;
          nearest = j;
        }
      }
      std::int64_t nearest_impl = kInf;
      for (const auto& r : impl_leaves) {
        nearest_impl = std::min(nearest_impl, similarity(leaves[i], r));
      }
      if (nearest_mockup < nearest_impl) {
        merge_at(leaves, i, nearest, merges);
        changed = true;
        break;
      }
    }
  }
  return leaves;
}

MatchResult match_leaves(const std::vector<GuiComponent>& mockup_leaves,
                         const std::vector<GuiComponent>& impl_leaves,
                         double mt) {
  struct Candidate {
    std::int64_t gamma;
    std::size_t m;
    std::size_t r;
  };
  std::vector<Candidate> candidates;
  for (std::size_t m = 0; m < mockup_leaves.size(); ++m) {
    for (std::size_t r = 0; r < impl_leaves.size(); ++r) {
      const auto g = similarity(mockup_leaves[m], impl_leaves[r]);
      if (static_cast<double>(g) <= mt) candidates.push_back({g, m, r});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              return std::tie(a.gamma, mockup_leaves[a.m].id,
                              impl_leaves[a.r].id) <
                     std::tie(b.gamma, mockup_leaves[b.m].id,
                              impl_leaves[b.r].id);
            });

  std::vector<bool> m_used(mockup_leaves.size(), false);
  std::vector<bool> r_used(impl_leaves.size(), false);
  MatchResult result;
  for (const auto& c : candidates) {
    if (m_used[c.m] || r_used[c.r]) continue;
    m_used[c.m] = true;
    r_used[c.r] = true;
    result.pairs.push_back(
        {mockup_leaves[c.m].id, impl_leaves[c.r].id, c.gamma});
  }
  for (std::size_t m = 0; m < mockup_leaves.size(); ++m) {
    if (!m_used[m]) result.unmatched_mockup.push_back(mockup_leaves[m].id);
  }
  for (std::size_t r = 0; r < impl_leaves.size(); ++r) {
    if (!r_used[r]) result.unmatched_impl.push_back(impl_leaves[r].id);
  }
  std::sort(result.unmatched_mockup.begin(), result.unmatched_mockup.end());
  std::sort(result.unmatched_impl.begin(), result.unmatched_impl.end());
  return result;
}

}  // namespace mockdiff
