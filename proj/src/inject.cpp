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

#include "mockdiff/inject.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>

#include <fmt/format.h>

#include "mockdiff/error.hpp"
#include "mockdiff/match.hpp"
#include "parallel.hpp"

namespace mockdiff {

using nlohmann::json;

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % span + 1) % span;
  std::uint64_t x = next();
  while (x > limit) x = next();
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

std::string_view to_string(InjectionRule rule) {
  switch (rule) {
    case InjectionRule::kLocation: return "location";
    case InjectionRule::kSize: return "size";
    case InjectionRule::kMissing: return "missing";
    case InjectionRule::kImage: return "image";
    case InjectionRule::kImageColor: return "image-color";
    case InjectionRule::kComponentColor: return "component-color";
    case InjectionRule::kFont: return "font";
    case InjectionRule::kFontColor: return "font-color";
  }
  return "?";
}

InjectionRule parse_injection_rule(std::string_view s) {
  for (auto r : kAllRules) {
    if (to_string(r) == s) return r;
  }
  throw Error(ErrorCode::kParseError, "unknown injection rule " + std::string(s));
}

Category category_of(InjectionRule rule) {
  switch (rule) {
    case InjectionRule::kLocation:
    case InjectionRule::kSize:
      return Category::kLayout;
    case InjectionRule::kFont:
    case InjectionRule::kFontColor:
      return Category::kText;
    default:
      return Category::kResource;
  }
}

std::string_view to_string(LeafKind kind) {
  switch (kind) {
    case LeafKind::kText: return "text";
    case LeafKind::kIcon: return "icon";
    case LeafKind::kButton: return "button";
  }
  return "?";
}

bool rule_applies(InjectionRule rule, LeafKind kind) {
  switch (rule) {
    case InjectionRule::kLocation:
    case InjectionRule::kSize:
    case InjectionRule::kMissing:
      return true;
    case InjectionRule::kImage:
    case InjectionRule::kImageColor:
      return kind == LeafKind::kIcon;
    case InjectionRule::kComponentColor:
      return kind == LeafKind::kButton;
    case InjectionRule::kFont:
    case InjectionRule::kFontColor:
      return kind == LeafKind::kText;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Colour helpers

namespace {

struct Hsv {
  double h = 0;  // degrees
  double s = 0;
  double v = 0;
};

Hsv to_hsv(Rgb c) {
  const double r = c.r / 255.0;
  const double g = c.g / 255.0;
  const double b = c.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0 ? d / mx : 0;
  if (d > 0) {
    if (mx == r) {
      out.h = 60.0 * std::fmod((g - b) / d, 6.0);
    } else if (mx == g) {
      out.h = 60.0 * ((b - r) / d + 2.0);
    } else {
      out.h = 60.0 * ((r - g) / d + 4.0);
    }
    if (out.h < 0) out.h += 360.0;
  }
  return out;
}

std::uint8_t to_byte(double unit) {
  const double v = std::floor(unit * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

Rgb from_hsv(Hsv hsv) {
  const double c = hsv.v * hsv.s;
  const double hp = hsv.h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = hsv.v - c;
  return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

bool achromatic(Rgb c) { return c.r == c.g && c.g == c.b; }

int luma_of(Rgb c) {
  return static_cast<int>(std::lround(0.299 * c.r + 0.587 * c.g + 0.114 * c.b));
}

}  // namespace

Rgb shift_hue(Rgb c, double degrees) {
  if (achromatic(c)) return c;
  Hsv hsv = to_hsv(c);
  hsv.h = std::fmod(hsv.h + degrees, 360.0);
  if (hsv.h < 0) hsv.h += 360.0;
  return from_hsv(hsv);
}

Rgb surrounding_mode(const Image& img, const BoundingBox& box, int width) {
  const auto outer = clamp_into(
      {box.x - width, box.y - width, box.w + 2 * width, box.h + 2 * width},
      img.bounds());
  std::unordered_map<std::uint32_t, std::int64_t> counts;
  for (int y = outer.y; y < outer.bottom(); ++y) {
    for (int x = outer.x; x < outer.right(); ++x) {
      if (box.contains_point(x, y)) continue;
      ++counts[img.at(x, y).packed()];
    }
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kInjectionInfeasible,
                "component has no surrounding pixels");
  }
  std::uint32_t best = 0;
  std::int64_t best_count = -1;
  for (const auto& [packed, n] : counts) {
    if (n > best_count || (n == best_count && packed < best)) {
      best = packed;
      best_count = n;
    }
  }
  return {static_cast<std::uint8_t>(best >> 16),
          static_cast<std::uint8_t>((best >> 8) & 0xff),
          static_cast<std::uint8_t>(best & 0xff)};
}

// ---------------------------------------------------------------------------
// Scene generation and rendering

namespace {

constexpr int kRows = 6;
constexpr int kMargin = 24;
constexpr int kJitter = 10;
constexpr int kLayoutAttempts = 64;
constexpr double kMinInkFraction = 0.30;
constexpr const char* kPackage = "com.example.corpus";

constexpr const char* kWords[] = {
    "SETTINGS", "PROFILE",  "MESSAGES", "ACCOUNT",   "SEARCH",  "CONTACTS",
    "WEATHER",  "BOOKMARK", "GALLERY",  "MUSIC",     "CALENDAR", "PAYMENTS",
    "HISTORY",  "NEWS",     "MAPS",     "CAMERA",    "NOTES",   "ORDERS",
    "WALLET",   "FRIENDS",  "PHOTOS",   "VIDEOS",    "EVENTS",  "SHARE",
    "UPDATE",   "BANKING",  "RECEIPTS", "OFFERS",    "BOOKS",   "HOME",
    "MEMBERS",  "SUMMARY",  "DETAILS",  "SECURITY",  "SUPPORT", "RECENT",
};

constexpr const char* kTitles[] = {"DASHBOARD", "OVERVIEW", "MY SHOP",
                                   "INBOX", "ACCOUNT", "EXPLORE"};

constexpr Rgb kInks[] = {
    {33, 33, 33}, {0, 0, 160}, {140, 0, 0}, {0, 100, 0}, {90, 0, 130},
    {0, 90, 120},
};

Rgb random_hsv(Rng& rng, double s_lo, double s_hi, double v_lo, double v_hi) {
  Hsv hsv;
  hsv.h = rng.uniform(0, 359);
  hsv.s = s_lo + (s_hi - s_lo) * rng.unit();
  hsv.v = v_lo + (v_hi - v_lo) * rng.unit();
  return from_hsv(hsv);
}

int text_pad(int scale) { return 2 * scale; }

void draw_text_leaf(Image& img, const SceneNode& n) {
  draw_text(img, n.box.x + text_pad(n.scale), n.box.y, n.text, n.face,
            n.scale, n.color);
}

bool in_icon_shape(IconShape shape, int px, int py, int size) {
  const double l = size;
  const double cx = l / 2.0;
  const double x = px + 0.5;
  const double y = py + 0.5;
  switch (shape) {
    case IconShape::kDisk: {
      const double r = 0.31 * l;
      return (x - cx) * (x - cx) + (y - cx) * (y - cx) <= r * r;
    }
    case IconShape::kRing: {
      const double d2 = (x - cx) * (x - cx) + (y - cx) * (y - cx);
      return d2 >= 0.28 * l * 0.28 * l && d2 <= 0.42 * l * 0.42 * l;
    }
    case IconShape::kTriangle: {
      const double top = 0.125 * l;
      const double bottom = 0.875 * l;
      if (y < top || y > bottom) return false;
      return std::abs(x - cx) <= 0.4 * l * (y - top) / (bottom - top);
    }
    case IconShape::kChecker: {
      const double side = 0.78 * l;
      const double x0 = cx - side / 2.0;
      if (x < x0 || y < x0 || x >= x0 + side || y >= x0 + side) return false;
      const int i = static_cast<int>((x - x0) / (side / 4.0));
      const int j = static_cast<int>((y - x0) / (side / 4.0));
      return (i + j) % 2 == 0;
    }
    case IconShape::kDiamond:
      return std::abs(x - cx) + std::abs(y - cx) <= 0.387 * l;
  }
  return false;
}

void render_node(Image& img, const SceneNode& n) {
  if (!n.leaf) {
    img.fill(n.box, n.color);
  } else {
    switch (*n.leaf) {
      case LeafKind::kText:
        draw_text_leaf(img, n);
        break;
      case LeafKind::kButton:
        img.fill(n.box, n.color);
        break;
      case LeafKind::kIcon:
        img.fill(n.box, n.background);
        for (int y = 0; y < n.box.h; ++y) {
          for (int x = 0; x < n.box.w; ++x) {
            if (in_icon_shape(n.shape, x, y, n.box.w)) {
              img.at(n.box.x + x, n.box.y + y) = n.color;
            }
          }
        }
        break;
    }
  }
  for (const auto& c : n.children) render_node(img, c);
}

double ink_fraction(const SceneNode& n) {
  Image probe(n.box.w, n.box.h, n.background);
  SceneNode local = n;
  local.box.x = 0;
  local.box.y = 0;
  draw_text_leaf(probe, local);
  std::int64_t ink = 0;
  for (const auto& p : probe.pixels()) ink += p == n.background ? 0 : 1;
  return static_cast<double>(ink) / static_cast<double>(n.box.area());
}

SceneNode make_text(Rng& rng, const std::string& name, Rgb backdrop) {
  SceneNode n;
  n.name = name;
  n.class_name = "android.widget.TextView";
  n.leaf = LeafKind::kText;
  n.background = backdrop;
  n.color = kInks[rng.uniform(0, std::size(kInks) - 1)];
  n.face = rng.uniform(0, 1) == 0 ? FontFace::kBlock : FontFace::kOblique;
  for (int tries = 0;; ++tries) {
    n.text = kWords[rng.uniform(0, std::size(kWords) - 1)];
    n.scale = static_cast<int>(rng.uniform(4, 5));
    n.box.w = text_pixel_width(n.text, n.scale) + 2 * text_pad(n.scale);
    n.box.h = text_pixel_height(n.scale);
    if (ink_fraction(n) >= kMinInkFraction || tries > 64) break;
  }
  return n;
}

SceneNode make_icon(Rng& rng, const std::string& name) {
  SceneNode n;
  n.name = name;
  n.class_name = "android.widget.ImageView";
  n.leaf = LeafKind::kIcon;
  n.shape = static_cast<IconShape>(rng.uniform(0, 4));
  const int size = static_cast<int>(rng.uniform(120, 180));
  n.box.w = size;
  n.box.h = size;
  n.background = {255, 255, 255};
  // Mid-to-light saturated foregrounds binarize cleanly against white.
  do {
    n.color = random_hsv(rng, 0.75, 1.0, 0.75, 1.0);
  } while (luma_of(n.color) < 110 || luma_of(n.color) > 200);
  return n;
}

SceneNode make_button(Rng& rng, const std::string& name) {
  SceneNode n;
  n.name = name;
  n.class_name = "android.widget.Button";
  n.leaf = LeafKind::kButton;
  n.box.w = static_cast<int>(rng.uniform(260, 400));
  n.box.h = static_cast<int>(rng.uniform(100, 140));
  n.color = random_hsv(rng, 0.6, 0.9, 0.6, 0.9);
  return n;
}

void collect_leaves(const SceneNode& n, std::vector<const SceneNode*>& out) {
  if (n.leaf) {
    out.push_back(&n);
    return;
  }
  for (const auto& c : n.children) collect_leaves(c, out);
}

std::vector<const SceneNode*> scene_leaves(const SceneNode& root) {
  std::vector<const SceneNode*> out;
  collect_leaves(root, out);
  return out;
}

bool well_separated(const SceneNode& root, std::int64_t min_gamma) {
  const auto leaves = scene_leaves(root);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (similarity(leaves[i]->box, leaves[j]->box) <= min_gamma) return false;
    }
  }
  return true;
}

std::optional<SceneNode> layout_attempt(Rng& rng, const LayoutRecipe& recipe) {
  const int width = recipe.canvas.width;
  const int height = recipe.canvas.height;
  const int toolbar_h = height / 12;
  const int pitch = (height - toolbar_h) / kRows;

  SceneNode root;
  root.name = "screen";
  root.class_name = "android.widget.FrameLayout";
  root.box = {0, 0, width, height};
  root.color = {250, 250, 250};

  if (recipe.title) {
    SceneNode bar;
    bar.name = "toolbar";
    bar.class_name = "android.view.ViewGroup";
    bar.box = {0, 0, width, toolbar_h};
    bar.color = random_hsv(rng, 0.7, 0.8, 0.45, 0.55);
    SceneNode title = make_text(rng, "title", bar.color);
    title.text = kTitles[rng.uniform(0, std::size(kTitles) - 1)];
    title.scale = 5;
    title.color = {255, 255, 255};
    title.box.w = text_pixel_width(title.text, 5) + 2 * text_pad(5);
    title.box.h = text_pixel_height(5);
    title.box.x = 2 * kMargin;
    title.box.y = (toolbar_h - title.box.h) / 2;
    bar.children.push_back(std::move(title));
    root.children.push_back(std::move(bar));
  }

  std::vector<LeafKind> kinds;
  kinds.insert(kinds.end(), recipe.texts, LeafKind::kText);
  kinds.insert(kinds.end(), recipe.icons, LeafKind::kIcon);
  kinds.insert(kinds.end(), recipe.buttons, LeafKind::kButton);
  rng.shuffle(kinds);
  const int n = static_cast<int>(kinds.size());
  if (n == 0) return root;

  const int min_rows = (n + 1) / 2;
  const int rows = static_cast<int>(rng.uniform(min_rows, std::min(n, kRows)));
  std::vector<int> per_row(rows, 1);
  std::vector<int> order(rows);
  for (int i = 0; i < rows; ++i) order[i] = i;
  rng.shuffle(order);
  for (int i = 0; i < n - rows; ++i) per_row[order[i]] = 2;

  int counters[3] = {0, 0, 0};
  std::size_t next_kind = 0;
  for (int r = 0; r < rows; ++r) {
    SceneNode row;
    row.name = fmt::format("row_{}", r);
    row.class_name = "android.widget.LinearLayout";
    row.box = {0, toolbar_h + r * pitch, width, pitch};
    row.color = random_hsv(rng, 0.03, 0.10, 0.95, 0.99);
    const int slots = per_row[r];
    for (int s = 0; s < slots; ++s) {
      const LeafKind kind = kinds[next_kind++];
      const int k = static_cast<int>(kind);
      SceneNode leaf;
      switch (kind) {
        case LeafKind::kText:
          leaf = make_text(rng, fmt::format("text_{}", counters[k]++), row.color);
          break;
        case LeafKind::kIcon:
          leaf = make_icon(rng, fmt::format("icon_{}", counters[k]++));
          break;
        case LeafKind::kButton:
          leaf = make_button(rng, fmt::format("button_{}", counters[k]++));
          break;
      }
      const int slot_w = width / slots;
      const int slot_x = s * slot_w;
      const int x_lo = slot_x + kMargin;
      const int x_hi = slot_x + slot_w - kMargin - leaf.box.w;
      const int y_mid = row.box.y + (pitch - leaf.box.h) / 2;
      if (x_hi < x_lo || pitch - leaf.box.h < 2 * (kMargin + kJitter)) {
        throw Error(ErrorCode::kRecipeError,
                    fmt::format("{} does not fit the {}x{} canvas", leaf.name,
                                width, height));
      }
      leaf.box.x = static_cast<int>(rng.uniform(x_lo, x_hi));
      leaf.box.y = y_mid + static_cast<int>(rng.uniform(-kJitter, kJitter));
      row.children.push_back(std::move(leaf));
    }
    root.children.push_back(std::move(row));
  }

  // Leaves stay far enough apart that a displaced leaf never comes closer to
  // another leaf's mock-up box than to its own.
  if (!well_separated(root, static_cast<std::int64_t>(2 * (width / 8)))) {
    return std::nullopt;
  }
  return root;
}

GuiComponent to_mockup_gc(const SceneNode& n, const std::string& id) {
  GuiComponent gc;
  gc.id = id;
  gc.name = n.name;
  gc.box = n.box;
  if (n.leaf == LeafKind::kText) {
    gc.text = n.text;
    gc.font = std::string(to_string(n.face));
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    gc.children.push_back(
        to_mockup_gc(n.children[i], id + "/" + std::to_string(i)));
  }
  return gc;
}

GuiComponent to_impl_gc(const SceneNode& n) {
  GuiComponent gc;
  gc.id = n.name;
  gc.box = n.box;
  gc.class_name = n.class_name;
  gc.resource_id = std::string(kPackage) + ":id/" + n.name;
  if (n.leaf == LeafKind::kText) gc.text = n.text;
  for (const auto& c : n.children) gc.children.push_back(to_impl_gc(c));
  return gc;
}

void record_leaves(const SceneNode& n, const std::string& id,
                   std::vector<LeafRecord>& out) {
  if (n.leaf) {
    out.push_back({n.name, id, *n.leaf, n.box});
    return;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    record_leaves(n.children[i], id + "/" + std::to_string(i), out);
  }
}

}  // namespace

Image render_scene(const SceneNode& root) {
  Image img(root.box.w, root.box.h, root.color);
  render_node(img, root);
  return img;
}

CorpusScreen generate_screen(std::uint64_t seed, const LayoutRecipe& recipe) {
  if (recipe.texts < 0 || recipe.icons < 0 || recipe.buttons < 0) {
    throw Error(ErrorCode::kRecipeError, "negative component count");
  }
  if (recipe.texts + recipe.icons + recipe.buttons == 0 && !recipe.title) {
    throw Error(ErrorCode::kRecipeError, "recipe has no components");
  }
  if (recipe.canvas.width <= 0 || recipe.canvas.height <= 0) {
    throw Error(ErrorCode::kRecipeError, "canvas must be positive");
  }
  const int n = recipe.texts + recipe.icons + recipe.buttons;
  if ((n + 1) / 2 > kRows) {
    throw Error(ErrorCode::kRecipeError,
                fmt::format("{} components need more than {} rows", n, kRows));
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < kLayoutAttempts; ++attempt) {
    auto root = layout_attempt(rng, recipe);
    if (!root) continue;
    CorpusScreen out;
    out.mockup_scene = *root;
    out.impl_scene = std::move(*root);
    out.mockup_png = render_scene(out.mockup_scene);
    out.impl_png = out.mockup_png;
    // Mock-up object ids follow the spec parser: "m", then child indices.
    for (std::size_t i = 0; i < out.mockup_scene.children.size(); ++i) {
      record_leaves(out.mockup_scene.children[i], "m/" + std::to_string(i),
                    out.leaves);
    }
    return out;
  }
  throw Error(ErrorCode::kRecipeError,
              "could not place the components without crowding");
}

std::string CorpusScreen::mockup_spec() const {
  GuiComponent root = to_mockup_gc(mockup_scene, "m");
  return emit_mockup_spec(Screen(ScreenKind::kMockup, std::move(root), mockup_png));
}

std::string CorpusScreen::impl_dump() const {
  GuiComponent root;
  root.id = "root";
  root.box = impl_png.bounds();
  root.children.push_back(to_impl_gc(impl_scene));
  return emit_impl_dump(
      Screen(ScreenKind::kImplementation, std::move(root), impl_png));
}

Screen CorpusScreen::mockup_screen() const {
  return parse_mockup_text(mockup_spec(), mockup_png);
}

Screen CorpusScreen::impl_screen() const {
  return parse_impl_text(impl_dump(), impl_png);
}

// ---------------------------------------------------------------------------
// Injection rules

namespace {

const int kMinShift = static_cast<int>(AnalysisConfig{}.lt) + 1;

struct Located {
  SceneNode* node = nullptr;
  SceneNode* parent = nullptr;
  std::size_t index = 0;
};

bool locate(SceneNode& n, const std::string& name, Located& out) {
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    auto& c = n.children[i];
    if (c.name == name) {
      out = {&c, &n, i};
      return true;
    }
    if (locate(c, name, out)) return true;
  }
  return false;
}

Located find_leaf(CorpusScreen& screen, const std::string& gc) {
  Located found;
  if (!locate(screen.impl_scene, gc, found) || !found.node->leaf) {
    throw Error(ErrorCode::kInjectionInfeasible,
                "no implementation leaf named " + gc);
  }
  return found;
}

const LeafRecord& leaf_record(const CorpusScreen& screen,
                              const std::string& gc) {
  for (const auto& l : screen.leaves) {
    if (l.name == gc) return l;
  }
  throw Error(ErrorCode::kInjectionInfeasible, "no mock-up leaf named " + gc);
}

void require_kind(InjectionRule rule, const SceneNode& n) {
  if (!rule_applies(rule, *n.leaf)) {
    throw Error(ErrorCode::kInjectionInfeasible,
                fmt::format("{} injection does not apply to {} {}",
                            to_string(rule), to_string(*n.leaf), n.name));
  }
}

InjectionRecord make_record(const CorpusScreen& screen, const std::string& gc,
                            InjectionRule rule, Subtype subtype,
                            std::optional<BoundingBox> impl_box, json params) {
  const auto& leaf = leaf_record(screen, gc);
  return {gc, leaf.mockup_id, rule, subtype, leaf.box, impl_box,
          std::move(params)};
}

// Boxes a moved or resized leaf must stay clear of: every other leaf on
// either side.
std::vector<BoundingBox> obstacles(const CorpusScreen& screen,
                                   const std::string& gc) {
  std::vector<BoundingBox> out;
  for (const auto* n : scene_leaves(screen.impl_scene)) {
    if (n->name != gc) out.push_back(n->box);
  }
  for (const auto& l : screen.leaves) {
    if (l.name != gc) out.push_back(l.box);
  }
  return out;
}

bool placeable(const BoundingBox& b, const BoundingBox& container,
               const std::vector<BoundingBox>& blocked) {
  if (!container.contains(b)) return false;
  return std::none_of(blocked.begin(), blocked.end(), [&](const auto& o) {
    return overlap_area(b, o) > 0;
  });
}

std::string hex(Rgb c) { return to_hex(c); }

}  // namespace

InjectionRecord inject_location(CorpusScreen& screen, const std::string& gc,
                                std::uint64_t seed) {
  auto found = find_leaf(screen, gc);
  const BoundingBox old_box = found.node->box;
  const BoundingBox container = found.parent->box;
  const auto blocked = obstacles(screen, gc);
  const int width = screen.impl_png.width();
  const int cap = std::min(width / 4, width / 8);

  Rng rng(seed);
  std::vector<int> modes = {0, 1, 2};  // x, y, both
  rng.shuffle(modes);
  auto legal = [&](int dx, int dy) {
    return placeable({old_box.x + dx, old_box.y + dy, old_box.w, old_box.h},
                     container, blocked);
  };

  for (int mode : modes) {
    std::vector<std::pair<int, int>> options;
    for (int a = -cap; a <= cap; ++a) {
      if (std::abs(a) < kMinShift) continue;
      if (mode == 0 && legal(a, 0)) options.push_back({a, 0});
      if (mode == 1 && legal(0, a)) options.push_back({0, a});
      if (mode == 2) {
        const int rest = cap - std::abs(a);
        for (int b = -rest; b <= rest; ++b) {
          if (std::abs(b) >= kMinShift && legal(a, b)) options.push_back({a, b});
        }
      }
    }
    if (options.empty()) continue;
    const auto [dx, dy] =
        options[rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1)];
    const BoundingBox new_box{old_box.x + dx, old_box.y + dy, old_box.w,
                              old_box.h};

    const Image patch = crop_image(screen.impl_png, old_box);
    const Rgb fill = surrounding_mode(screen.impl_png, old_box);
    screen.impl_png.fill(old_box, fill);
    paste_image(screen.impl_png, patch, new_box.x, new_box.y);
    found.node->box = new_box;

    const Subtype subtype = mode == 0   ? Subtype::kTranslationX
                            : mode == 1 ? Subtype::kTranslationY
                                        : Subtype::kTranslationXY;
    return make_record(screen, gc, InjectionRule::kLocation, subtype, new_box,
                       {{"dx", dx},
                        {"dy", dy},
                        {"direction", mode == 0 ? "x" : mode == 1 ? "y" : "xy"},
                        {"backfill", hex(fill)}});
  }
  throw Error(ErrorCode::kInjectionInfeasible,
              fmt::format("no legal displacement of at least {} px for {}",
                          kMinShift, gc));
}

InjectionRecord inject_size(CorpusScreen& screen, const std::string& gc,
                            std::uint64_t seed) {
  auto found = find_leaf(screen, gc);
  const BoundingBox old_box = found.node->box;
  const auto blocked = obstacles(screen, gc);

  Rng rng(seed);
  std::vector<double> factors = {1.2, 0.8};
  rng.shuffle(factors);
  for (double f : factors) {
    const int w = static_cast<int>(std::lround(old_box.w * f));
    const int h = static_cast<int>(std::lround(old_box.h * f));
    if (std::abs(w - old_box.w) < kMinShift || std::abs(h - old_box.h) < kMinShift) {
      continue;
    }
    const BoundingBox new_box{old_box.x, old_box.y, w, h};
    if (!placeable(new_box, found.parent->box, blocked)) continue;

    const Image patch =
        resize_nearest(crop_image(screen.impl_png, old_box), w, h);
    json params = {{"factor", f},
                   {"from", {old_box.w, old_box.h}},
                   {"to", {w, h}}};
    if (f < 1.0) {
      const Rgb fill = surrounding_mode(screen.impl_png, old_box);
      screen.impl_png.fill(old_box, fill);
      params["backfill"] = hex(fill);
    }
    paste_image(screen.impl_png, patch, new_box.x, new_box.y);
    found.node->box = new_box;
    return make_record(screen, gc, InjectionRule::kSize, Subtype::kSizeBoth,
                       new_box, std::move(params));
  }
  throw Error(ErrorCode::kInjectionInfeasible,
              "neither growing nor shrinking " + gc + " fits its container");
}

InjectionRecord inject_missing(CorpusScreen& screen, const std::string& gc) {
  auto found = find_leaf(screen, gc);
  // An emptied container would itself turn into a leaf.
  if (found.parent->children.size() < 2) {
    throw Error(ErrorCode::kInjectionInfeasible,
                gc + " is the only child of " + found.parent->name);
  }
  const BoundingBox box = found.node->box;
  const Rgb fill = surrounding_mode(screen.impl_png, box);
  screen.impl_png.fill(box, fill);
  found.parent->children.erase(found.parent->children.begin() +
                               static_cast<std::ptrdiff_t>(found.index));
  return make_record(screen, gc, InjectionRule::kMissing,
                     Subtype::kMissingComponent, std::nullopt,
                     {{"backfill", hex(fill)}});
}

InjectionRecord inject_image(CorpusScreen& screen, const std::string& gc,
                             std::uint64_t seed) {
  auto found = find_leaf(screen, gc);
  require_kind(InjectionRule::kImage, *found.node);
  const BoundingBox box = found.node->box;
  const auto area = static_cast<std::int64_t>(box.area());
  const std::int64_t changed = area * 2 / 5;

  Rng rng(seed);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(area));
  for (std::int64_t i = 0; i < area; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (std::int64_t i = 0; i < changed; ++i) {
    const auto j = rng.uniform(i, area - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    const auto p = idx[static_cast<std::size_t>(i)];
    Rgb& px = screen.impl_png.at(box.x + static_cast<int>(p % box.w),
                                 box.y + static_cast<int>(p / box.w));
    Rgb c = px;
    while (c == px) {
      c = {static_cast<std::uint8_t>(rng.uniform(0, 255)),
           static_cast<std::uint8_t>(rng.uniform(0, 255)),
           static_cast<std::uint8_t>(rng.uniform(0, 255))};
    }
    px = c;
  }
  return make_record(screen, gc, InjectionRule::kImage,
                     Subtype::kIncorrectImage, box,
                     {{"changed_pixels", changed}, {"fraction", 0.4}});
}

namespace {

std::int64_t shift_box(Image& img, const BoundingBox& box, double degrees) {
  std::int64_t changed = 0;
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      Rgb& p = img.at(x, y);
      const Rgb q = shift_hue(p, degrees);
      changed += q == p ? 0 : 1;
      p = q;
    }
  }
  return changed;
}

}  // namespace

InjectionRecord inject_image_color(CorpusScreen& screen, const std::string& gc) {
  auto found = find_leaf(screen, gc);
  require_kind(InjectionRule::kImageColor, *found.node);
  const Rgb before = found.node->color;
  const auto changed = shift_box(screen.impl_png, found.node->box, 30.0);
  if (changed == 0) {
    throw Error(ErrorCode::kInjectionInfeasible, gc + " has no chromatic pixels");
  }
  found.node->color = shift_hue(before, 30.0);
  return make_record(screen, gc, InjectionRule::kImageColor,
                     Subtype::kImageColor, found.node->box,
                     {{"hue_shift", 30},
                      {"before", hex(before)},
                      {"after", hex(found.node->color)},
                      {"changed_pixels", changed}});
}

InjectionRecord inject_component_color(CorpusScreen& screen,
                                       const std::string& gc) {
  auto found = find_leaf(screen, gc);
  require_kind(InjectionRule::kComponentColor, *found.node);
  const Rgb before = found.node->color;
  const auto changed = shift_box(screen.impl_png, found.node->box, 180.0);
  if (changed == 0) {
    throw Error(ErrorCode::kInjectionInfeasible, gc + " has no chromatic pixels");
  }
  found.node->color = shift_hue(before, 180.0);
  return make_record(screen, gc, InjectionRule::kComponentColor,
                     Subtype::kComponentColor, found.node->box,
                     {{"hue_shift", 180},
                      {"before", hex(before)},
                      {"after", hex(found.node->color)}});
}

namespace {

// The commercial faces a designer might pick, and the embedded face that
// stands in for each.
constexpr std::pair<const char*, FontFace> kFontStandIns[] = {
    {"Arial", FontFace::kBlock},
    {"Roboto", FontFace::kBlock},
    {"Comic Sans MS", FontFace::kOblique},
    {"Courier", FontFace::kOblique},
    {"Times Roman", FontFace::kOblique},
};

}  // namespace

InjectionRecord inject_font(CorpusScreen& screen, const std::string& gc,
                            std::uint64_t seed) {
  auto found = find_leaf(screen, gc);
  require_kind(InjectionRule::kFont, *found.node);
  SceneNode& n = *found.node;
  std::vector<std::pair<const char*, FontFace>> options;
  for (const auto& f : kFontStandIns) {
    if (f.second != n.face) options.push_back(f);
  }
  Rng rng(seed);
  const auto [requested, face] =
      options[rng.uniform(0, static_cast<std::int64_t>(options.size()) - 1)];
  const FontFace before = n.face;
  n.face = face;
  screen.impl_png.fill(n.box, n.background);
  draw_text_leaf(screen.impl_png, n);
  return make_record(screen, gc, InjectionRule::kFont, Subtype::kFontStyle,
                     n.box,
                     {{"requested", requested},
                      {"from", to_string(before)},
                      {"to", to_string(face)}});
}

InjectionRecord inject_font_color(CorpusScreen& screen, const std::string& gc) {
  auto found = find_leaf(screen, gc);
  require_kind(InjectionRule::kFontColor, *found.node);
  SceneNode& n = *found.node;
  const BoundingBox box = n.box;

  std::map<std::uint32_t, std::int64_t> counts;
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      ++counts[screen.impl_png.at(x, y).packed()];
    }
  }
  std::uint32_t mode = 0;
  std::int64_t best = -1;
  for (const auto& [packed, count] : counts) {
    if (count > best) {
      mode = packed;
      best = count;
    }
  }

  constexpr Rgb kSubstitute{255, 0, 0};
  bool substituted = false;
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x; x < box.right(); ++x) {
      Rgb& p = screen.impl_png.at(x, y);
      if (p.packed() == mode) continue;
      if (achromatic(p)) {
        p = kSubstitute;
        substituted = true;
      } else {
        p = shift_hue(p, 180.0);
      }
    }
  }
  const Rgb before = n.color;
  n.color = achromatic(before) ? kSubstitute : shift_hue(before, 180.0);
  json params = {{"hue_shift", 180},
                 {"before", hex(before)},
                 {"after", hex(n.color)}};
  params["substitute"] = substituted ? json(hex(kSubstitute)) : json(nullptr);
  return make_record(screen, gc, InjectionRule::kFontColor, Subtype::kFontColor,
                     box, std::move(params));
}

InjectionRecord inject(CorpusScreen& screen, InjectionRule rule,
                       const std::string& gc, std::uint64_t seed) {
  switch (rule) {
    case InjectionRule::kLocation: return inject_location(screen, gc, seed);
    case InjectionRule::kSize: return inject_size(screen, gc, seed);
    case InjectionRule::kMissing: return inject_missing(screen, gc);
    case InjectionRule::kImage: return inject_image(screen, gc, seed);
    case InjectionRule::kImageColor: return inject_image_color(screen, gc);
    case InjectionRule::kComponentColor:
      return inject_component_color(screen, gc);
    case InjectionRule::kFont: return inject_font(screen, gc, seed);
    case InjectionRule::kFontColor: return inject_font_color(screen, gc);
  }
  throw std::logic_error("unknown injection rule");
}

bool counterparts_unambiguous(const CorpusScreen& screen, double mt) {
  const auto mock = scene_leaves(screen.mockup_scene);
  const auto impl = scene_leaves(screen.impl_scene);
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max();
  for (const auto* m : mock) {
    std::int64_t nearest_mock = kInf;
    for (const auto* o : mock) {
      if (o != m) nearest_mock = std::min(nearest_mock, similarity(m->box, o->box));
    }
    std::int64_t nearest_impl = kInf;
    for (const auto* r : impl) {
      const auto g = similarity(m->box, r->box);
      nearest_impl = std::min(nearest_impl, g);
      const bool own = r->name == m->name;
      if (own != (static_cast<double>(g) <= mt)) return false;
    }
    if (nearest_mock < nearest_impl) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Manifest and corpus

json to_json(const ManifestEntry& e) {
  const auto& r = e.record;
  json j = {{"screen_id", e.screen_id},
            {"gc_id", r.gc_id},
            {"mockup_gc_id", r.mockup_gc_id},
            {"rule", to_string(r.rule)},
            {"category", to_string(category_of(r.subtype))},
            {"subtype", to_string(r.subtype)},
            {"mockup_box", box_to_json(r.mockup_box)}};
  if (r.impl_box) j["impl_box"] = box_to_json(*r.impl_box);
  j["params"] = r.params;
  return j;
}

ManifestEntry manifest_entry_from_json(const json& j) {
  try {
    ManifestEntry e;
    e.screen_id = j.at("screen_id").get<std::string>();
    auto& r = e.record;
    r.gc_id = j.at("gc_id").get<std::string>();
    r.mockup_gc_id = j.value("mockup_gc_id", std::string());
    r.subtype = parse_subtype(j.at("subtype").get<std::string>());
    r.rule = j.contains("rule")
                 ? parse_injection_rule(j.at("rule").get<std::string>())
                 : InjectionRule::kLocation;
    r.mockup_box = box_from_json(j.at("mockup_box"));
    if (j.contains("impl_box") && !j.at("impl_box").is_null()) {
      r.impl_box = box_from_json(j.at("impl_box"));
    }
    if (j.contains("params")) r.params = j.at("params");
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed manifest entry: ") + ex.what());
  }
}

Distribution default_distribution() {
  return {
      {InjectionRule::kLocation, 0.40 / 2},
      {InjectionRule::kSize, 0.40 / 2},
      {InjectionRule::kMissing, 0.36 / 4},
      {InjectionRule::kImage, 0.36 / 4},
      {InjectionRule::kImageColor, 0.36 / 4},
      {InjectionRule::kComponentColor, 0.36 / 4},
      {InjectionRule::kFont, 0.24 / 2},
      {InjectionRule::kFontColor, 0.24 / 2},
  };
}

std::vector<int> largest_remainder(const std::vector<double>& weights,
                                   int total) {
  std::vector<int> out(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> rest;
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double q = weights[i] * total;
    // Guard against 0.2 * 100 landing a hair under 20.
    const double fl = std::floor(q + 1e-9);
    out[i] = static_cast<int>(fl);
    assigned += out[i];
    rest.push_back({std::max(0.0, q - fl), i});
  }
  std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  for (std::size_t k = 0; assigned < total && k < rest.size(); ++k, ++assigned) {
    ++out[rest[k].second];
  }
  return out;
}

namespace {

constexpr int kScreenAttempts = 32;

CorpusScreen build_screen(std::uint64_t seed, const LayoutRecipe& recipe,
                          const std::vector<InjectionRule>& tokens,
                          const std::string& id) {
  const double mt = AnalysisConfig{}.matching_threshold(recipe.canvas.width);
  for (int attempt = 0; attempt < kScreenAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    CorpusScreen screen = generate_screen(rng.next(), recipe);
    screen.id = id;
    bool ok = true;
    for (auto rule : tokens) {
      std::vector<std::string> candidates;
      for (const auto& leaf : screen.leaves) {
        const bool used = std::any_of(
            screen.records.begin(), screen.records.end(),
            [&](const auto& r) { return r.gc_id == leaf.name; });
        if (!used && rule_applies(rule, leaf.kind)) candidates.push_back(leaf.name);
      }
      rng.shuffle(candidates);
      bool placed = false;
      for (const auto& gc : candidates) {
        CorpusScreen trial = screen;
        try {
          trial.records.push_back(inject(trial, rule, gc, rng.next()));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kInjectionInfeasible) throw;
          continue;
        }
        if (!counterparts_unambiguous(trial, mt)) continue;
        screen = std::move(trial);
        placed = true;
        break;
      }
      if (!placed) {
        ok = false;
        break;
      }
    }
    if (ok) return screen;
  }
  throw Error(ErrorCode::kCorpusError,
              "could not place the requested injections on screen " + id);
}

}  // namespace

Corpus build_corpus(int n_screens, int n_violations, std::uint64_t seed,
                    const Distribution& distribution,
                    const LayoutRecipe& recipe) {
  if (n_screens < 1) {
    throw Error(ErrorCode::kCorpusError, "need at least one screen");
  }
  if (n_violations < n_screens || n_violations > 3 * n_screens) {
    throw Error(ErrorCode::kCorpusError,
                fmt::format("{} violations cannot be spread over {} screens "
                            "with 1 to 3 per screen",
                            n_violations, n_screens));
  }
  std::vector<double> weights;
  double sum = 0;
  for (const auto& [rule, w] : distribution) {
    if (w < 0) throw Error(ErrorCode::kCorpusError, "negative weight");
    weights.push_back(w);
    sum += w;
  }
  if (distribution.empty() || std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::kCorpusError, "distribution must sum to 1");
  }

  const auto counts = largest_remainder(weights, n_violations);
  std::vector<InjectionRule> tokens;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    tokens.insert(tokens.end(), counts[i], distribution[i].first);
  }
  Rng rng(derive_seed(seed, 0));
  rng.shuffle(tokens);

  std::vector<int> per_screen(n_screens, 1);
  for (int extra = n_violations - n_screens; extra > 0; --extra) {
    std::vector<int> open;
    for (int i = 0; i < n_screens; ++i) {
      if (per_screen[i] < 3) open.push_back(i);
    }
    ++per_screen[open[rng.uniform(0, static_cast<std::int64_t>(open.size()) - 1)]];
  }

  const int digits = std::max<int>(3, static_cast<int>(std::to_string(n_screens - 1).size()));
  std::vector<std::vector<InjectionRule>> dealt(n_screens);
  std::size_t next = 0;
  for (int i = 0; i < n_screens; ++i) {
    for (int k = 0; k < per_screen[i]; ++k) dealt[i].push_back(tokens[next++]);
  }

  Corpus corpus;
  corpus.screens.resize(static_cast<std::size_t>(n_screens));
  internal::parallel_for(static_cast<std::size_t>(n_screens), [&](std::size_t i) {
    corpus.screens[i] =
        build_screen(derive_seed(seed, 1, i), recipe, dealt[i],
                     fmt::format("s{:0{}}", i, digits));
  });
  for (const auto& s : corpus.screens) {
    for (const auto& r : s.records) corpus.manifest.push_back({s.id, r});
  }
  return corpus;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

}  // namespace

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());
  internal::parallel_for(corpus.screens.size(), [&](std::size_t i) {
    const auto& s = corpus.screens[i];
    const auto sub = dir / s.id;
    std::error_code sub_ec;
    std::filesystem::create_directories(sub, sub_ec);
    if (sub_ec) throw Error(ErrorCode::kIoError, "cannot create " + sub.string());
    write_text(sub / "mockup.spec", s.mockup_spec());
    write_text(sub / "impl.xml", s.impl_dump());
    save_png(s.mockup_png, sub / "mockup.png");
    save_png(s.impl_png, sub / "impl.png");
    json entries = json::array();
    for (const auto& r : s.records) entries.push_back(to_json(ManifestEntry{s.id, r}));
    write_text(sub / "entries.json", entries.dump(2) + "\n");
  });
  json manifest = json::array();
  for (const auto& e : corpus.manifest) manifest.push_back(to_json(e));
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file) {
  json doc;
  try {
    doc = json::parse(read_text_file(file));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError,
                file.string() + ": " + std::string(e.what()));
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kParseError, file.string() + ": expected an array");
  }
  std::vector<ManifestEntry> out;
  for (const auto& j : doc) out.push_back(manifest_entry_from_json(j));
  return out;
}

}  // namespace mockdiff
