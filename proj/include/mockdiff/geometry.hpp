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

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>

namespace mockdiff {

// Axis-aligned box in integer screen pixels; origin top-left, right and
// bottom edges exclusive.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  constexpr int right() const { return x + w; }
  constexpr int bottom() const { return y + h; }
  constexpr std::int64_t area() const {
    return static_cast<std::int64_t>(w) * static_cast<std::int64_t>(h);
  }
  constexpr bool empty() const { return w <= 0 || h <= 0; }

  constexpr bool contains(const BoundingBox& o) const {
    return o.x >= x && o.y >= y && o.right() <= right() &&
           o.bottom() <= bottom();
  }
  constexpr bool contains_point(int px, int py) const {
    return px >= x && py >= y && px < right() && py < bottom();
  }

  friend constexpr bool operator==(const BoundingBox&,
                                   const BoundingBox&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const BoundingBox& b) {
  return os << "(" << b.x << "," << b.y << "," << b.w << "," << b.h << ")";
}

// Overlap of two boxes; nullopt when the overlap has no area.
inline std::optional<BoundingBox> intersect(const BoundingBox& a,
                                            const BoundingBox& b) {
  const int x1 = std::max(a.x, b.x);
  const int y1 = std::max(a.y, b.y);
  const int x2 = std::min(a.right(), b.right());
  const int y2 = std::min(a.bottom(), b.bottom());
  if (x2 <= x1 || y2 <= y1) return std::nullopt;
  return BoundingBox{x1, y1, x2 - x1, y2 - y1};
}

inline BoundingBox unite(const BoundingBox& a, const BoundingBox& b) {
  const int x1 = std::min(a.x, b.x);
  const int y1 = std::min(a.y, b.y);
  const int x2 = std::max(a.right(), b.right());
  const int y2 = std::max(a.bottom(), b.bottom());
  return {x1, y1, x2 - x1, y2 - y1};
}

inline std::int64_t overlap_area(const BoundingBox& a, const BoundingBox& b) {
  const auto o = intersect(a, b);
  return o ? o->area() : 0;
}

// Intersection over union; 0 when both boxes are degenerate.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const auto inter = overlap_area(a, b);
  const auto uni = a.area() + b.area() - inter;
  if (uni <= 0) return a == b ? 1.0 : 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Clamps `child` into `parent`. A child entirely outside collapses to a
// zero-area box on the nearest parent edge.
inline BoundingBox clamp_into(const BoundingBox& child,
                              const BoundingBox& parent) {
  const int x1 = std::clamp(child.x, parent.x, parent.right());
  const int y1 = std::clamp(child.y, parent.y, parent.bottom());
  const int x2 = std::clamp(child.right(), x1, parent.right());
  const int y2 = std::clamp(child.bottom(), y1, parent.bottom());
  return {x1, y1, x2 - x1, y2 - y1};
}

}  // namespace mockdiff
