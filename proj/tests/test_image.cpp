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


#include "mockdiff/image.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "mockdiff/error.hpp"
#include "test_util.hpp"

namespace mockdiff {
namespace {

using testing::fresh_dir;
using testing::random_image;

TEST(Rgb, HexAndPacking) {
  EXPECT_EQ(to_hex({255, 140, 0}), "#ff8c00");
  EXPECT_EQ((Rgb{1, 2, 3}.packed()), 0x010203u);
}

TEST(Image, FillClipsToCanvas) {
  Image img(4, 3, {0, 0, 0});
  img.fill({2, 1, 10, 10}, {9, 9, 9});
  int painted = 0;
  for (const auto& p : img.pixels()) painted += p == Rgb{9, 9, 9};
  EXPECT_EQ(painted, 2 * 2);
  EXPECT_EQ(img.at(1, 1), (Rgb{0, 0, 0}));
}

TEST(CropImage, FullBoxIsIdentity) {
  const auto img = random_image(17, 9, 1);
  EXPECT_EQ(crop_image(img, img.bounds()), img);
}

TEST(CropImage, SinglePixel) {
  const auto img = random_image(17, 9, 2);
  const auto c = crop_image(img, {0, 0, 1, 1});
  ASSERT_EQ(c.width(), 1);
  ASSERT_EQ(c.height(), 1);
  EXPECT_EQ(c.at(0, 0), img.at(0, 0));
}

TEST(CropImage, OverhangIsClipped) {
  const auto img = random_image(100, 20, 3);
  const auto c = crop_image(img, {80, 0, 30, 20});
  EXPECT_EQ(c.width(), 100 - 80);
  EXPECT_EQ(c.at(0, 0), img.at(80, 0));
}

TEST(CropImage, MissThrowsEmptyCrop) {
  const auto img = random_image(10, 10, 4);
  try {
    crop_image(img, {10, 0, 5, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCrop);
  }
}

TEST(CropImage, PasteBackReproducesOriginal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto img = random_image(31, 23, seed);
    const BoundingBox box{static_cast<int>(seed % 7), static_cast<int>(seed % 5),
                          12, 9};
    Image copy = img;
    copy.fill(box, {0, 0, 0});
    paste_image(copy, crop_image(img, box), box.x, box.y);
    EXPECT_EQ(copy, img);
  }
}

TEST(ResizeNearest, IntegerUpscaleReplicatesPixels) {
  const auto img = random_image(3, 2, 5);
  const auto big = resize_nearest(img, 6, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 6; ++x) EXPECT_EQ(big.at(x, y), img.at(x / 2, y / 2));
  }
  EXPECT_EQ(resize_nearest(img, 3, 2), img);
}

TEST(Png, RoundTripIsBitExact) {
  const auto dir = fresh_dir("png");
  const auto img = random_image(37, 21, 6);
  save_png(img, dir / "a.png");
  EXPECT_EQ(load_png(dir / "a.png"), img);
}

TEST(Png, GarbageFileIsRejected) {
  const auto dir = fresh_dir("png_bad");
  std::ofstream(dir / "bad.png") << "not a png";
  EXPECT_THROW(load_png(dir / "bad.png"), Error);
  EXPECT_THROW(load_png(dir / "missing.png"), Error);
}

}  // namespace
}  // namespace mockdiff
