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


#include "mockdiff/font.hpp"

#include <gtest/gtest.h>

#include "mockdiff/error.hpp"

namespace mockdiff {
namespace {

constexpr Rgb kInk{0, 0, 0};

Image render(const std::string& text, FontFace face, int scale) {
  const int pad = max_shear(face, scale) + 2;
  Image img(text_pixel_width(text, scale) + 2 * pad, text_pixel_height(scale) + 4);
  draw_text(img, pad, 2, text, face, scale, kInk);
  return img;
}

int ink(const Image& img) {
  int n = 0;
  for (const auto& p : img.pixels()) n += p == kInk;
  return n;
}

TEST(Font, Metrics) {
  EXPECT_EQ(text_pixel_width("", 3), 0);
  EXPECT_EQ(text_pixel_width("A", 1), 5);
  EXPECT_EQ(text_pixel_width("AB", 2), (2 * 6 - 1) * 2);
  EXPECT_EQ(text_pixel_height(4), 28);
  EXPECT_EQ(max_shear(FontFace::kBlock, 4), 0);
  EXPECT_EQ(max_shear(FontFace::kOblique, 4), 6);
  EXPECT_EQ(row_shear(FontFace::kOblique, 3, 4), 0);
  EXPECT_EQ(row_shear(FontFace::kOblique, 6, 4), -6);
}

TEST(Font, NamesRoundTrip) {
  for (auto f : embedded_faces()) EXPECT_EQ(parse_font_face(to_string(f)), f);
  EXPECT_GE(embedded_faces().size(), 2u);
  EXPECT_THROW(parse_font_face("Comic Sans MS"), Error);
}

TEST(Font, FacesDifferInRasterNotInk) {
  for (const char* text : {"SETTINGS", "MY SHOP", "0123456789"}) {
    const auto block = render(text, FontFace::kBlock, 3);
    const auto oblique = render(text, FontFace::kOblique, 3);
    EXPECT_NE(block, oblique) << text;
    EXPECT_EQ(ink(block), ink(oblique)) << text;
    EXPECT_GT(ink(block), 0);
  }
}

TEST(Font, InkStaysInsideTheShearedBox) {
  const auto img = render("WAVE", FontFace::kBlock, 2);
  const int pad = 2;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.at(x, y) != kInk) continue;
      EXPECT_GE(x, pad);
      EXPECT_LT(x, pad + text_pixel_width("WAVE", 2));
      EXPECT_GE(y, 2);
      EXPECT_LT(y, 2 + text_pixel_height(2));
    }
  }
}

TEST(Font, CaseFoldingAndFallbackGlyph) {
  EXPECT_EQ(render("hello", FontFace::kBlock, 1), render("HELLO", FontFace::kBlock, 1));
  EXPECT_EQ(render("#", FontFace::kBlock, 2), render("?", FontFace::kBlock, 2));
  EXPECT_EQ(ink(render(" ", FontFace::kBlock, 2)), 0);
}

TEST(Font, ScaleMultipliesInk) {
  const int one = ink(render("MAPS", FontFace::kBlock, 1));
  EXPECT_EQ(ink(render("MAPS", FontFace::kBlock, 3)), one * 9);
}

}  // namespace
}  // namespace mockdiff
