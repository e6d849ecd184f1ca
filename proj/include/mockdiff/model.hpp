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

// Domain types shared by every stage of the pipeline.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mockdiff/geometry.hpp"
#include "mockdiff/image.hpp"

namespace mockdiff {

// A GUI component: box, optional text, and source metadata. The pixels of a
// component are the region of its owning screen's screenshot under `box`
// (see crop()).
struct GuiComponent {
  std::string id;
  BoundingBox box;
  std::optional<std::string> text;
  std::optional<std::string> class_name;
  std::optional<std::string> resource_id;
  // Mock-up object name and font; absent for runtime components.
  std::optional<std::string> name;
  std::optional<std::string> font;
  std::vector<GuiComponent> children;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const GuiComponent&, const GuiComponent&) = default;
};

enum class ScreenKind { kMockup, kImplementation };

// Rooted component hierarchy plus its screenshot. Immutable once built; the
// constructor rejects anything that breaks the invariants (root covers the
// canvas, children contained in parents, unique ids, screenshot size).
class Screen {
 public:
  Screen(ScreenKind kind, GuiComponent root, Image screenshot);

  ScreenKind kind() const { return kind_; }
  int width() const { return screenshot_.width(); }
  int height() const { return screenshot_.height(); }
  const GuiComponent& root() const { return root_; }
  const Image& screenshot() const { return screenshot_; }

  friend bool operator==(const Screen&, const Screen&) = default;

 private:
  ScreenKind kind_;
  GuiComponent root_;
  Image screenshot_;
};

// Clamps every descendant box into its parent, recursively. Used at
// ingestion before a Screen is constructed.
void clamp_hierarchy(GuiComponent& node);

// Leaves in depth-first pre-order.
std::vector<GuiComponent> leaf_components(const Screen& screen);
std::vector<GuiComponent> leaf_components(const GuiComponent& root);

// Screenshot pixels under `box`, clipped to the canvas. Throws EmptyCrop.
Image crop(const Screen& screen, const BoundingBox& box);

enum class Category { kLayout, kText, kResource };

enum class Subtype {
  kTranslationX,
  kTranslationY,
  kTranslationXY,
  kSizeWidth,
  kSizeHeight,
  kSizeBoth,
  kTextContent,
  kFontColor,
  kFontStyle,
  kMissingComponent,
  kExtraneousComponent,
  kIncorrectImage,
  kImageColor,
  kComponentColor,
};

inline constexpr Subtype kAllSubtypes[] = {
    Subtype::kTranslationX,     Subtype::kTranslationY,
    Subtype::kTranslationXY,    Subtype::kSizeWidth,
    Subtype::kSizeHeight,       Subtype::kSizeBoth,
    Subtype::kTextContent,      Subtype::kFontColor,
    Subtype::kFontStyle,        Subtype::kMissingComponent,
    Subtype::kExtraneousComponent, Subtype::kIncorrectImage,
    Subtype::kImageColor,       Subtype::kComponentColor,
};

Category category_of(Subtype s);
std::string_view to_string(Category c);
std::string_view to_string(Subtype s);
Category parse_category(std::string_view s);
Subtype parse_subtype(std::string_view s);

// One detected mismatch between a mock-up component and its implementation.
// Category is derived from the subtype. The constructor enforces which side
// ids must be present: MissingComponent carries only the mock-up side,
// ExtraneousComponent only the implementation side, everything else both.
class DesignViolation {
 public:
  DesignViolation(Subtype subtype, std::optional<std::string> mockup_gc,
                  std::optional<BoundingBox> mockup_box,
                  std::optional<std::string> impl_gc,
                  std::optional<BoundingBox> impl_box, std::string description,
                  nlohmann::json evidence = nlohmann::json::object());

  Category category() const { return category_of(subtype_); }
  Subtype subtype() const { return subtype_; }
  const std::optional<std::string>& mockup_gc() const { return mockup_gc_; }
  const std::optional<std::string>& impl_gc() const { return impl_gc_; }
  const std::optional<BoundingBox>& mockup_box() const { return mockup_box_; }
  const std::optional<BoundingBox>& impl_box() const { return impl_box_; }
  const std::string& description() const { return description_; }
  const nlohmann::json& evidence() const { return evidence_; }

  // The box a violation is located by: the mock-up box for missing
  // components, the implementation box otherwise.
  BoundingBox anchor_box() const;

  friend bool operator==(const DesignViolation&,
                         const DesignViolation&) = default;

 private:
  Subtype subtype_;
  std::optional<std::string> mockup_gc_;
  std::optional<BoundingBox> mockup_box_;
  std::optional<std::string> impl_gc_;
  std::optional<BoundingBox> impl_box_;
  std::string description_;
  nlohmann::json evidence_;
};

nlohmann::json to_json(const DesignViolation& v);
DesignViolation violation_from_json(const nlohmann::json& j);

nlohmann::json box_to_json(const BoundingBox& b);
BoundingBox box_from_json(const nlohmann::json& j);

// Every tunable threshold. Fractions are in [0,1]; pixel values are >= 0.
struct AnalysisConfig {
  // GC-matching threshold in pixels; screen_width / 8 when unset.
  std::optional<double> mt;
  double dt = 0.20;
  double lt = 5.0;
  double ct = 0.85;
  double idt = 0.20;
  double pid_fov_degrees = 45.0;
  double pid_luminance_cdm2 = 100.0;
  double pid_color_factor = 1.0;
  std::vector<BoundingBox> exclusion_regions;

  double matching_threshold(int screen_width) const {
    return mt ? *mt : screen_width / 8.0;
  }

  // Throws ConfigError on out-of-range values.
  void validate() const;

  friend bool operator==(const AnalysisConfig&,
                         const AnalysisConfig&) = default;
};

nlohmann::json to_json(const AnalysisConfig& c);

}  // namespace mockdiff
