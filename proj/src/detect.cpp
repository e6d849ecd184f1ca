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

#include "mockdiff/detect.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "mockdiff/error.hpp"

namespace mockdiff {

namespace {

using nlohmann::json;

std::string display_name(const GuiComponent& gc) {
  if (gc.resource_id) {
    const auto pos = gc.resource_id->find("id/");
    return pos == std::string::npos ? *gc.resource_id
                                    : gc.resource_id->substr(pos + 3);
  }
  if (gc.name) return *gc.name;
  if (gc.text) return "\"" + *gc.text + "\"";
  return gc.id;
}

bool contains(const std::optional<std::string>& s, std::string_view needle) {
  return s && s->find(needle) != std::string::npos;
}

json color_list(const std::vector<Rgb>& colors) {
  json out = json::array();
  for (const auto& c : colors) out.push_back(to_hex(c));
  return out;
}

DesignViolation pair_violation(Subtype subtype, const ComponentPair& pair,
                               std::string description, json evidence) {
  return DesignViolation(subtype, pair.mockup.id, pair.mockup.box,
                         pair.impl.id, pair.impl.box, std::move(description),
                         std::move(evidence));
}

std::string join_colors(const std::vector<Rgb>& colors) {
  std::string out;
  for (const auto& c : colors) {
    if (!out.empty()) out += ", ";
    out += to_hex(c);
  }
  return out;
}

}  // namespace

bool is_text_based(const ComponentPair& pair) {
  if (contains(pair.impl.class_name, "TextView") ||
      contains(pair.impl.class_name, "EditText")) {
    return true;
  }
  return (pair.mockup.text && !pair.mockup.text->empty()) ||
         (pair.impl.text && !pair.impl.text->empty());
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) continue;
    out += u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
  }
  return out;
}

std::vector<DesignViolation> detect_layout(const ComponentPair& pair,
                                           const AnalysisConfig& config) {
  const auto& m = pair.mockup.box;
  const auto& r = pair.impl.box;
  const int dx = r.x - m.x;
  const int dy = r.y - m.y;
  const int dw = r.w - m.w;
  const int dh = r.h - m.h;
  const bool tx = std::abs(dx) > config.lt;
  const bool ty = std::abs(dy) > config.lt;
  const bool sw = std::abs(dw) > config.lt;
  const bool sh = std::abs(dh) > config.lt;

  const json evidence = {{"dx", dx}, {"dy", dy}, {"dw", dw},
                         {"dh", dh}, {"lt", config.lt}};
  const auto name = display_name(pair.impl);
  std::vector<DesignViolation> out;
  if (tx || ty) {
    const Subtype s = tx && ty ? Subtype::kTranslationXY
                      : tx     ? Subtype::kTranslationX
                               : Subtype::kTranslationY;
    std::string desc;
    if (tx && ty) {
      desc = fmt::format(
          "Component {} is shifted {} px horizontally and {} px vertically "
          "from its mock-up position ({}, {}).",
          name, dx, dy, m.x, m.y);
    } else if (tx) {
      desc = fmt::format(
          "Component {} is shifted {} px horizontally from its mock-up "
          "position x = {}.",
          name, dx, m.x);
    } else {
      desc = fmt::format(
          "Component {} is shifted {} px vertically from its mock-up "
          "position y = {}.",
          name, dy, m.y);
    }
    out.push_back(pair_violation(s, pair, desc, evidence));
  }
  if (sw || sh) {
    const Subtype s = sw && sh ? Subtype::kSizeBoth
                      : sw     ? Subtype::kSizeWidth
                               : Subtype::kSizeHeight;
    std::string desc;
    if (sw && sh) {
      desc = fmt::format(
          "Component {} is {}x{} px but the mock-up specifies {}x{} px.", name,
          r.w, r.h, m.w, m.h);
    } else if (sw) {
      desc = fmt::format(
          "Component {} is {} px wide but the mock-up specifies {} px.", name,
          r.w, m.w);
    } else {
      desc = fmt::format(
          "Component {} is {} px tall but the mock-up specifies {} px.", name,
          r.h, m.h);
    }
    out.push_back(pair_violation(s, pair, desc, evidence));
  }
  return out;
}

std::vector<DesignViolation> detect_text(const ComponentPair& pair,
                                         const PairCrops& crops,
                                         const AnalysisConfig& config,
                                         bool has_layout_violation) {
  const auto name = display_name(pair.impl);
  const std::string mockup_text = pair.mockup.text.value_or("");
  const std::string impl_text = pair.impl.text.value_or("");
  if (normalize_text(mockup_text) != normalize_text(impl_text)) {
    return {pair_violation(
        Subtype::kTextContent, pair,
        fmt::format("Component {} displays \"{}\" but the mock-up specifies "
                    "\"{}\".",
                    name, impl_text, mockup_text),
        {{"mockup_text", mockup_text}, {"impl_text", impl_text}})};
  }

  const auto hm = histogram(crops.mockup);
  const auto hr = histogram(crops.impl);
  const double sim = histogram_similarity(hm, hr);
  if (sim < config.ct) {
    const auto cm = top_colors(hm, 3);
    const auto cr = top_colors(hr, 3);
    return {pair_violation(
        Subtype::kFontColor, pair,
        fmt::format("Text of component {} uses colors {} but the mock-up uses "
                    "{} (color similarity {:.3f} < {:.2f}).",
                    name, join_colors(cr), join_colors(cm), sim, config.ct),
        {{"similarity", sim},
         {"ct", config.ct},
         {"mockup_colors", color_list(cm)},
         {"impl_colors", color_list(cr)}})};
  }
  if (!has_layout_violation) {
    json evidence = {{"similarity", sim}};
    if (pair.mockup.font) evidence["mockup_font"] = *pair.mockup.font;
    return {pair_violation(
        Subtype::kFontStyle, pair,
        fmt::format("Text of component {} matches the mock-up in content and "
                    "color but is rendered in a different font style.",
                    name),
        evidence)};
  }
  return {};
}

std::vector<DesignViolation> detect_resource(const ComponentPair& pair,
                                             const PairCrops& crops,
                                             const AnalysisConfig& config) {
  const auto name = display_name(pair.impl);
  const Image impl_scaled =
      resize_nearest(crops.impl, crops.mockup.width(), crops.mockup.height());
  const PidParams params{config.pid_fov_degrees, config.pid_luminance_cdm2,
                         config.pid_color_factor};
  const auto bdiff =
      perceptual_diff(binarize(crops.mockup), binarize(impl_scaled), params);
  const double bpid_density = diff_density(bdiff, bdiff.bounds());
  if (bpid_density > config.idt) {
    return {pair_violation(
        Subtype::kIncorrectImage, pair,
        fmt::format("Component {} shows different content than the mock-up: "
                    "{:.1f}% of its binarized pixels differ (threshold "
                    "{:.0f}%).",
                    name, bpid_density * 100.0, config.idt * 100.0),
        {{"bpid_density", bpid_density}, {"idt", config.idt}})};
  }

  const auto hm = histogram(crops.mockup);
  const auto hr = histogram(crops.impl);
  const double sim = histogram_similarity(hm, hr);
  if (sim < config.ct) {
    const bool image = contains(pair.impl.class_name, "Image");
    const auto cm = top_colors(hm, 3);
    const auto cr = top_colors(hr, 3);
    return {pair_violation(
        image ? Subtype::kImageColor : Subtype::kComponentColor, pair,
        fmt::format("{} {} uses colors {} but the mock-up uses {} (color "
                    "similarity {:.3f} < {:.2f}).",
                    image ? "Image" : "Component", name, join_colors(cr),
                    join_colors(cm), sim, config.ct),
        {{"bpid_density", bpid_density},
         {"similarity", sim},
         {"ct", config.ct},
         {"mockup_colors", color_list(cm)},
         {"impl_colors", color_list(cr)}})};
  }
  return {};
}

namespace {

bool excluded(const BoundingBox& box, const AnalysisConfig& config) {
  if (box.area() <= 0) return false;
  return std::any_of(config.exclusion_regions.begin(),
                     config.exclusion_regions.end(), [&](const auto& region) {
                       return 2 * overlap_area(box, region) > box.area();
                     });
}

}  // namespace

AnalysisResult analyze_detailed(const Screen& mockup, const Screen& impl,
                                const AnalysisConfig& config) {
  if (mockup.width() != impl.width() || mockup.height() != impl.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("mock-up is {}x{} but the implementation is {}x{}",
                            mockup.width(), mockup.height(), impl.width(),
                            impl.height()));
  }
  config.validate();

  AnalysisResult result;
  result.impl_leaves = leaf_components(impl);
  std::vector<Merge> merges;
  result.mockup_leaves = merge_fragmented(
      merge_overlapping(leaf_components(mockup), &merges),
      result.impl_leaves, &merges);
  result.match = match_leaves(result.mockup_leaves, result.impl_leaves,
                              config.matching_threshold(impl.width()));
  result.match.merges = std::move(merges);

  result.diff = perceptual_diff(
      mockup.screenshot(), impl.screenshot(),
      {config.pid_fov_degrees, config.pid_luminance_cdm2,
       config.pid_color_factor});
  for (const auto& region : config.exclusion_regions) result.diff.clear(region);

  std::map<std::string, std::size_t> mock_index;
  std::map<std::string, std::size_t> impl_index;
  for (std::size_t i = 0; i < result.mockup_leaves.size(); ++i) {
    mock_index[result.mockup_leaves[i].id] = i;
  }
  for (std::size_t i = 0; i < result.impl_leaves.size(); ++i) {
    impl_index[result.impl_leaves[i].id] = i;
  }

  std::vector<DesignViolation> found;
  for (const auto& p : result.match.pairs) {
    const auto& m = result.mockup_leaves[mock_index.at(p.mockup_id)];
    const auto& r = result.impl_leaves[impl_index.at(p.impl_id)];
    if (excluded(r.box, config)) continue;
    const ComponentPair pair{m, r};

    auto layout = detect_layout(pair, config);
    const bool has_layout = !layout.empty();
    for (auto& v : layout) found.push_back(std::move(v));

    if (r.box.empty() || m.box.empty()) continue;
    const double density = diff_density(result.diff, r.box);
    if (!(density > config.dt)) continue;
    result.suspicious.push_back({m.id, r.id, density});

    const PairCrops crops{crop(mockup, m.box), crop(impl, r.box)};
    auto visual = is_text_based(pair)
                      ? detect_text(pair, crops, config, has_layout)
                      : detect_resource(pair, crops, config);
    for (auto& v : visual) {
      json evidence = v.evidence();
      evidence["density"] = density;
      evidence["dt"] = config.dt;
      evidence["gamma"] = p.gamma;
      found.emplace_back(v.subtype(), v.mockup_gc(), v.mockup_box(),
                         v.impl_gc(), v.impl_box(), v.description(), evidence);
    }
  }

  for (const auto& id : result.match.unmatched_mockup) {
    const auto& m = result.mockup_leaves[mock_index.at(id)];
    if (excluded(m.box, config)) continue;
    found.emplace_back(
        Subtype::kMissingComponent, m.id, m.box, std::nullopt, std::nullopt,
        fmt::format("Mock-up component {} at ({}, {}, {}x{}) has no "
                    "counterpart in the implementation.",
                    display_name(m), m.box.x, m.box.y, m.box.w, m.box.h));
  }
  for (const auto& id : result.match.unmatched_impl) {
    const auto& r = result.impl_leaves[impl_index.at(id)];
    if (excluded(r.box, config)) continue;
    found.emplace_back(
        Subtype::kExtraneousComponent, std::nullopt, std::nullopt, r.id, r.box,
        fmt::format("Implementation component {} at ({}, {}, {}x{}) does not "
                    "appear in the mock-up.",
                    display_name(r), r.box.x, r.box.y, r.box.w, r.box.h));
  }

  auto key = [&](const DesignViolation& v) {
    if (v.impl_gc()) {
      return std::make_tuple(0, impl_index.at(*v.impl_gc()),
                             static_cast<int>(v.subtype()));
    }
    return std::make_tuple(1, mock_index.at(*v.mockup_gc()),
                           static_cast<int>(v.subtype()));
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const DesignViolation& a, const DesignViolation& b) {
                     return key(a) < key(b);
                   });
  result.violations = std::move(found);
  return result;
}

std::vector<DesignViolation> analyze(const Screen& mockup, const Screen& impl,
                                     const AnalysisConfig& config) {
  return analyze_detailed(mockup, impl, config).violations;
}

}  // namespace mockdiff
