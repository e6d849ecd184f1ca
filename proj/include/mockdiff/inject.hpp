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

// Synthetic screens and design-violation injection for evaluation corpora.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mockdiff/font.hpp"
#include "mockdiff/image.hpp"
#include "mockdiff/ingest.hpp"
#include "mockdiff/model.hpp"

namespace mockdiff {

// Portable draws on top of mt19937_64; the standard distributions are not
// specified bit-for-bit, so corpora would differ between toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1).
  double unit();
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(
                              uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b = 0);

enum class InjectionRule {
  kLocation,
  kSize,
  kMissing,
  kImage,
  kImageColor,
  kComponentColor,
  kFont,
  kFontColor,
};

inline constexpr InjectionRule kAllRules[] = {
    InjectionRule::kLocation,   InjectionRule::kSize,
    InjectionRule::kMissing,    InjectionRule::kImage,
    InjectionRule::kImageColor, InjectionRule::kComponentColor,
    InjectionRule::kFont,       InjectionRule::kFontColor,
};

std::string_view to_string(InjectionRule rule);
InjectionRule parse_injection_rule(std::string_view s);
Category category_of(InjectionRule rule);

enum class LeafKind { kText, kIcon, kButton };
enum class IconShape { kDisk, kRing, kTriangle, kChecker, kDiamond };

std::string_view to_string(LeafKind kind);

struct SceneNode {
  std::string name;
  std::string class_name;
  BoundingBox box;
  // Fill for containers and buttons, ink for text, foreground for icons.
  Rgb color;
  // What the leaf is drawn over: icon backing, or the text's container.
  Rgb background{255, 255, 255};
  std::optional<LeafKind> leaf;
  std::string text;
  FontFace face = FontFace::kBlock;
  int scale = 1;
  IconShape shape = IconShape::kDisk;
  std::vector<SceneNode> children;
};

struct LayoutRecipe {
  CanvasSize canvas{1080, 1920};
  int texts = 4;
  int icons = 4;
  int buttons = 3;
  bool title = true;
};

struct LeafRecord {
  std::string name;
  std::string mockup_id;
  LeafKind kind;
  BoundingBox box;
};

struct InjectionRecord {
  std::string gc_id;  // scene name, also the resource-id suffix
  std::string mockup_gc_id;
  InjectionRule rule;
  Subtype subtype;
  BoundingBox mockup_box;
  std::optional<BoundingBox> impl_box;  // absent for removed components
  nlohmann::json params = nlohmann::json::object();
};

struct CorpusScreen {
  std::string id;
  SceneNode mockup_scene;
  SceneNode impl_scene;
  Image mockup_png;
  Image impl_png;
  std::vector<LeafRecord> leaves;
  std::vector<InjectionRecord> records;

  std::string mockup_spec() const;
  std::string impl_dump() const;
  Screen mockup_screen() const;
  Screen impl_screen() const;
};

// Renders a synthetic screen; mock-up and implementation start identical.
// Throws RecipeError when the components do not fit the canvas.
CorpusScreen generate_screen(std::uint64_t seed, const LayoutRecipe& recipe = {});

Image render_scene(const SceneNode& root);

// Each throws InjectionInfeasible when the rule cannot apply to `gc`.
InjectionRecord inject_location(CorpusScreen& screen, const std::string& gc,
                                std::uint64_t seed);
InjectionRecord inject_size(CorpusScreen& screen, const std::string& gc,
                            std::uint64_t seed);
InjectionRecord inject_missing(CorpusScreen& screen, const std::string& gc);
InjectionRecord inject_image(CorpusScreen& screen, const std::string& gc,
                             std::uint64_t seed);
InjectionRecord inject_image_color(CorpusScreen& screen, const std::string& gc);
InjectionRecord inject_component_color(CorpusScreen& screen,
                                       const std::string& gc);
InjectionRecord inject_font(CorpusScreen& screen, const std::string& gc,
                            std::uint64_t seed);
InjectionRecord inject_font_color(CorpusScreen& screen, const std::string& gc);

InjectionRecord inject(CorpusScreen& screen, InjectionRule rule,
                       const std::string& gc, std::uint64_t seed);

// Whether `rule` may target a leaf of `kind`.
bool rule_applies(InjectionRule rule, LeafKind kind);

// HSV hue rotation with value and saturation kept; grey is unchanged.
Rgb shift_hue(Rgb c, double degrees);

// Most frequent colour in the ring of `width` pixels around `box`, ties to
// the lowest packed RGB.
Rgb surrounding_mode(const Image& img, const BoundingBox& box, int width = 4);

// Every leaf keeps an unambiguous counterpart: its own implementation box is
// the only one within `mt`, and no other mock-up leaf is nearer than the
// nearest implementation leaf.
bool counterparts_unambiguous(const CorpusScreen& screen, double mt);

struct ManifestEntry {
  std::string screen_id;
  InjectionRecord record;
};

nlohmann::json to_json(const ManifestEntry& e);
ManifestEntry manifest_entry_from_json(const nlohmann::json& j);

using Distribution = std::vector<std::pair<InjectionRule, double>>;

// Layout 0.40, Resource 0.36, Text 0.24, split evenly over each category's
// rules.
Distribution default_distribution();

// Floors of weight * total, with the remaining units handed out by largest
// fractional part (earlier entries win ties).
std::vector<int> largest_remainder(const std::vector<double>& weights,
                                   int total);

struct Corpus {
  std::vector<CorpusScreen> screens;
  std::vector<ManifestEntry> manifest;
};

Corpus build_corpus(int n_screens, int n_violations, std::uint64_t seed,
                    const Distribution& distribution = default_distribution(),
                    const LayoutRecipe& recipe = {});

// One directory per screen plus manifest.json at the top.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file);

}  // namespace mockdiff
