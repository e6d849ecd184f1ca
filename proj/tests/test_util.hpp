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


// Shared helpers for the unit tests.

#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "mockdiff/image.hpp"
#include "mockdiff/ingest.hpp"
#include "mockdiff/model.hpp"

namespace mockdiff::testing {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(MOCKDIFF_FIXTURES) / rel;
}

// A fresh, empty directory under the system temp dir.
inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mockdiff_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Image random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Image img(w, h);
  for (auto& p : img.pixels()) {
    const auto v = gen();
    p = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
         static_cast<std::uint8_t>(v >> 16)};
  }
  return img;
}

inline void paint_leaves(Image& img, const GuiComponent& node, int& index) {
  if (node.is_leaf()) {
    const auto k = static_cast<std::uint8_t>(40 + 37 * index++);
    img.fill(node.box, {k, static_cast<std::uint8_t>(255 - k), 128});
    return;
  }
  for (const auto& c : node.children) paint_leaves(img, c, index);
}

// Screenshot for a hand-built fixture: every implementation leaf painted in
// its own colour on white.
inline Image fixture_screenshot(const std::string& dir, int w, int h) {
  const auto dump = read_text_file(fixture(dir + "/impl.xml"));
  const Screen blank = parse_impl_text(dump, Image(w, h));
  Image img(w, h);
  int index = 0;
  for (const auto& c : blank.root().children) paint_leaves(img, c, index);
  return img;
}

struct FixtureScreens {
  Screen mockup;
  Screen impl;
};

inline FixtureScreens load_fixture(const std::string& dir, int w, int h) {
  const Image shot = fixture_screenshot(dir, w, h);
  return {parse_mockup_text(read_text_file(fixture(dir + "/mockup.spec")), shot),
          parse_impl_text(read_text_file(fixture(dir + "/impl.xml")), shot)};
}

struct FixtureInfo {
  const char* dir;
  int width;
  int height;
};

inline constexpr FixtureInfo kFixtures[] = {
    {"login", 360, 640}, {"inbox", 720, 1280}, {"settings", 1080, 1920}};

}  // namespace mockdiff::testing
