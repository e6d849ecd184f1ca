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

#include "mockdiff/model.hpp"

#include <set>
#include <stdexcept>

#include "mockdiff/error.hpp"

namespace mockdiff {

namespace {

void check_tree(const GuiComponent& node, std::set<std::string>& ids) {
  if (node.box.w < 0 || node.box.h < 0) {
    throw Error(ErrorCode::kInvalidScreen, "negative box on " + node.id);
  }
  if (!ids.insert(node.id).second) {
    throw Error(ErrorCode::kInvalidScreen, "duplicate component id " + node.id);
  }
  for (const auto& child : node.children) {
    if (!node.box.contains(child.box)) {
      throw Error(ErrorCode::kInvalidScreen,
                  "component " + child.id + " escapes its parent " + node.id);
    }
    check_tree(child, ids);
  }
}

void collect_leaves(const GuiComponent& node, std::vector<GuiComponent>& out) {
  if (node.is_leaf()) {
    out.push_back(node);
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

}  // namespace

Screen::Screen(ScreenKind kind, GuiComponent root, Image screenshot)
    : kind_(kind), root_(std::move(root)), screenshot_(std::move(screenshot)) {
  if (screenshot_.empty()) {
    throw Error(ErrorCode::kInvalidScreen, "empty screenshot");
  }
  if (root_.box != screenshot_.bounds()) {
    throw Error(ErrorCode::kInvalidScreen,
                "root box must cover the whole canvas");
  }
  std::set<std::string> ids;
  check_tree(root_, ids);
}

void clamp_hierarchy(GuiComponent& node) {
  for (auto& child : node.children) {
    child.box = clamp_into(child.box, node.box);
    clamp_hierarchy(child);
  }
}

std::vector<GuiComponent> leaf_components(const GuiComponent& root) {
  std::vector<GuiComponent> out;
  collect_leaves(root, out);
  return out;
}

std::vector<GuiComponent> leaf_components(const Screen& screen) {
  return leaf_components(screen.root());
}

Image crop(const Screen& screen, const BoundingBox& box) {
  return crop_image(screen.screenshot(), box);
}

Category category_of(Subtype s) {
  switch (s) {
    case Subtype::kTranslationX:
    case Subtype::kTranslationY:
    case Subtype::kTranslationXY:
    case Subtype::kSizeWidth:
    case Subtype::kSizeHeight:
    case Subtype::kSizeBoth:
      return Category::kLayout;
    case Subtype::kTextContent:
    case Subtype::kFontColor:
    case Subtype::kFontStyle:
      return Category::kText;
    case Subtype::kMissingComponent:
    case Subtype::kExtraneousComponent:
    case Subtype::kIncorrectImage:
    case Subtype::kImageColor:
    case Subtype::kComponentColor:
      return Category::kResource;
  }
  throw std::logic_error("unknown subtype");
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kLayout: return "Layout";
    case Category::kText: return "Text";
    case Category::kResource: return "Resource";
  }
  return "?";
}

std::string_view to_string(Subtype s) {
  switch (s) {
    case Subtype::kTranslationX: return "TranslationX";
    case Subtype::kTranslationY: return "TranslationY";
    case Subtype::kTranslationXY: return "TranslationXY";
    case Subtype::kSizeWidth: return "SizeWidth";
    case Subtype::kSizeHeight: return "SizeHeight";
    case Subtype::kSizeBoth: return "SizeBoth";
    case Subtype::kTextContent: return "TextContent";
    case Subtype::kFontColor: return "FontColor";
    case Subtype::kFontStyle: return "FontStyle";
    case Subtype::kMissingComponent: return "MissingComponent";
    case Subtype::kExtraneousComponent: return "ExtraneousComponent";
    case Subtype::kIncorrectImage: return "IncorrectImage";
    case Subtype::kImageColor: return "ImageColor";
    case Subtype::kComponentColor: return "ComponentColor";
  }
  return "?";
}

Category parse_category(std::string_view s) {
  for (auto c : {Category::kLayout, Category::kText, Category::kResource}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorCode::kParseError, "unknown category " + std::string(s));
}

Subtype parse_subtype(std::string_view s) {
  for (auto st : kAllSubtypes) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorCode::kParseError, "unknown subtype " + std::string(s));
}

DesignViolation::DesignViolation(Subtype subtype,
                                 std::optional<std::string> mockup_gc,
                                 std::optional<BoundingBox> mockup_box,
                                 std::optional<std::string> impl_gc,
                                 std::optional<BoundingBox> impl_box,
                                 std::string description,
                                 nlohmann::json evidence)
    : subtype_(subtype),
      mockup_gc_(std::move(mockup_gc)),
      mockup_box_(mockup_box),
      impl_gc_(std::move(impl_gc)),
      impl_box_(impl_box),
      description_(std::move(description)),
      evidence_(std::move(evidence)) {
  const bool want_mockup = subtype_ != Subtype::kExtraneousComponent;
  const bool want_impl = subtype_ != Subtype::kMissingComponent;
  if (mockup_gc_.has_value() != want_mockup ||
      mockup_box_.has_value() != want_mockup) {
    throw std::invalid_argument(std::string(to_string(subtype_)) +
                                " has inconsistent mock-up side");
  }
  if (impl_gc_.has_value() != want_impl ||
      impl_box_.has_value() != want_impl) {
    throw std::invalid_argument(std::string(to_string(subtype_)) +
                                " has inconsistent implementation side");
  }
  if (!evidence_.is_object()) {
    throw std::invalid_argument("evidence must be a key-value map");
  }
}

BoundingBox DesignViolation::anchor_box() const {
  return subtype_ == Subtype::kMissingComponent ? *mockup_box_ : *impl_box_;
}

nlohmann::json box_to_json(const BoundingBox& b) {
  return nlohmann::json::array({b.x, b.y, b.w, b.h});
}

BoundingBox box_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::kParseError, "box must be [x, y, w, h]");
  }
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

nlohmann::json to_json(const DesignViolation& v) {
  nlohmann::json j;
  j["category"] = to_string(v.category());
  j["subtype"] = to_string(v.subtype());
  j["mockup_gc"] = v.mockup_gc() ? nlohmann::json(*v.mockup_gc()) : nlohmann::json(nullptr);
  j["mockup_box"] =
      v.mockup_box() ? box_to_json(*v.mockup_box()) : nlohmann::json(nullptr);
  j["impl_gc"] = v.impl_gc() ? nlohmann::json(*v.impl_gc()) : nlohmann::json(nullptr);
  j["impl_box"] =
      v.impl_box() ? box_to_json(*v.impl_box()) : nlohmann::json(nullptr);
  j["description"] = v.description();
  j["evidence"] = v.evidence();
  return j;
}

DesignViolation violation_from_json(const nlohmann::json& j) {
  try {
    const auto subtype = parse_subtype(j.at("subtype").get<std::string>());
    if (j.contains("category") &&
        parse_category(j.at("category").get<std::string>()) !=
            category_of(subtype)) {
      throw Error(ErrorCode::kParseError, "category does not match subtype");
    }
    auto opt_str = [&](const char* key) -> std::optional<std::string> {
      if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<std::string>();
    };
    auto opt_box = [&](const char* key) -> std::optional<BoundingBox> {
      if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
      return box_from_json(j.at(key));
    };
    return DesignViolation(subtype, opt_str("mockup_gc"), opt_box("mockup_box"),
                           opt_str("impl_gc"), opt_box("impl_box"),
                           j.value("description", std::string()),
                           j.value("evidence", nlohmann::json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed violation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

void AnalysisConfig::validate() const {
  auto fraction = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kConfigError,
                  std::string(name) + " must lie in [0,1]");
    }
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::kConfigError,
                  std::string(name) + " must be >= 0");
    }
  };
  if (mt) non_negative(*mt, "mt");
  fraction(dt, "dt");
  non_negative(lt, "lt");
  fraction(ct, "ct");
  fraction(idt, "idt");
  if (!(pid_fov_degrees > 0.0 && pid_fov_degrees < 180.0)) {
    throw Error(ErrorCode::kConfigError,
                "pid_fov_degrees must lie in (0,180)");
  }
  if (!(pid_luminance_cdm2 > 0.0)) {
    throw Error(ErrorCode::kConfigError, "pid_luminance_cdm2 must be > 0");
  }
  non_negative(pid_color_factor, "pid_color_factor");
  for (const auto& r : exclusion_regions) {
    if (r.w < 0 || r.h < 0) {
      throw Error(ErrorCode::kConfigError, "exclusion region has negative size");
    }
  }
}

nlohmann::json to_json(const AnalysisConfig& c) {
  nlohmann::json j;
  j["mt"] = c.mt ? nlohmann::json(*c.mt) : nlohmann::json(nullptr);
  j["dt"] = c.dt;
  j["lt"] = c.lt;
  j["ct"] = c.ct;
  j["idt"] = c.idt;
  j["pid_fov_degrees"] = c.pid_fov_degrees;
  j["pid_luminance_cdm2"] = c.pid_luminance_cdm2;
  j["pid_color_factor"] = c.pid_color_factor;
  auto regions = nlohmann::json::array();
  for (const auto& r : c.exclusion_regions) regions.push_back(box_to_json(r));
  j["exclusion_regions"] = regions;
  return j;
}

}  // namespace mockdiff
