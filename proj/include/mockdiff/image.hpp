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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mockdiff/geometry.hpp"

namespace mockdiff {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  constexpr std::uint32_t packed() const {
    return (std::uint32_t{r} << 16) | (std::uint32_t{g} << 8) | b;
  }
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

// "#rrggbb"
std::string to_hex(Rgb c);

// Row-major 8-bit RGB raster.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }
  BoundingBox bounds() const { return {0, 0, width_, height_}; }

  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }
  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }

  std::vector<Rgb>& pixels() { return pixels_; }
  const std::vector<Rgb>& pixels() const { return pixels_; }

  void fill(const BoundingBox& box, Rgb color);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Rgb> pixels_;
};

// Copies the part of `box` that lies on the image. Throws EmptyCrop when the
// box misses the image.
Image crop_image(const Image& img, const BoundingBox& box);

// Writes `patch` with its top-left corner at (x, y), clipped to `dst`.
void paste_image(Image& dst, const Image& patch, int x, int y);

// Nearest-neighbour resample.
Image resize_nearest(const Image& img, int width, int height);

// PNG codec. Alpha is flattened against white on load; output is 8-bit RGB.
Image load_png(const std::filesystem::path& path);
void save_png(const Image& img, const std::filesystem::path& path);

}  // namespace mockdiff
