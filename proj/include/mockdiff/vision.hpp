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

// Pixel-level comparison kernel.
//
// perceptual_diff follows Yee's perceptual metric:
//   * sRGB-ish input is linearised with gamma 2.2 and mapped to XYZ through
//     the Adobe RGB (1998) / D65 matrix, then to CIE L*a*b* against the
//     matrix white point;
//   * luminance (Y * luminance_cdm2) is decomposed into an 8-level
//     same-resolution Laplacian stack (5-tap kernel .05 .25 .4 .25 .05,
//     mirrored borders);
//   * each pixel's threshold is Ward's threshold-vs-intensity at the
//     adaptation level chosen from the field of view, elevated by a factor in
//     [1, 10] combining Barten's CSF (peak 3.248 cpd at 100 cd/m^2) and
//     Daly's masking over levels 0..5;
//   * pixels passing the luminance test also face a chroma test
//     (da^2 + db^2) * color_factor > factor, skipped when adaptation is
//     below 10 cd/m^2.
// Inputs with a side shorter than 2^kPyramidLevels pixels use a per-pixel
// fallback instead: sqrt(dL^2 + color_factor * (da^2 + db^2)) > 6.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mockdiff/geometry.hpp"
#include "mockdiff/image.hpp"

namespace mockdiff {

inline constexpr int kPyramidLevels = 8;
inline constexpr double kFallbackDeltaE = 6.0;

struct PidParams {
  double fov_degrees = 45.0;
  double luminance_cdm2 = 100.0;
  double color_factor = 1.0;
};

class DifferenceImage {
 public:
  DifferenceImage() = default;
  DifferenceImage(int width, int height)
      : width_(width),
        height_(height),
        mask_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  BoundingBox bounds() const { return {0, 0, width_, height_}; }

  bool at(int x, int y) const { return mask_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { mask_[index(x, y)] = v ? 1 : 0; }

  std::int64_t count() const;
  // Difference pixels inside `box` clipped to the canvas.
  std::int64_t count_in(const BoundingBox& box) const;
  void clear(const BoundingBox& box);

  friend bool operator==(const DifferenceImage&,
                         const DifferenceImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> mask_;
};

// Throws DimensionMismatch when the inputs differ in size.
DifferenceImage perceptual_diff(const Image& a, const Image& b,
                                const PidParams& params = {});

// Fraction of difference pixels in box ∩ canvas. Throws EmptyRegion.
double diff_density(const DifferenceImage& diff, const BoundingBox& box);

// 0.299 R + 0.587 G + 0.114 B, rounded to the nearest integer level.
std::uint8_t luma(Rgb c);

// Otsu threshold over the luma histogram: levels <= threshold are the dark
// class. A single-level image yields -1 (everything in the light class).
int otsu_threshold(const Image& img);

// Two-level image: black at or below the Otsu threshold, white above.
// A single-level image maps to all white.
Image binarize(const Image& img);

inline constexpr int kHistogramBinsPerChannel = 16;
inline constexpr int kHistogramBins =
    kHistogramBinsPerChannel * kHistogramBinsPerChannel *
    kHistogramBinsPerChannel;

// 16x16x16 RGB histogram (4 high bits per channel) with per-bin colour sums
// for centroids.
struct ColorHistogram {
  std::vector<std::uint64_t> bins;
  std::vector<std::array<std::uint64_t, 3>> sums;
  std::uint64_t total = 0;

  static int bin_of(Rgb c) {
    return ((c.r >> 4) << 8) | ((c.g >> 4) << 4) | (c.b >> 4);
  }
  Rgb centroid(int bin) const;
};

ColorHistogram histogram(const Image& img);

// 1 - ||h1/total1 - h2/total2||_2 / sqrt(2). Throws EmptyHistogram.
double histogram_similarity(const ColorHistogram& h1, const ColorHistogram& h2);

// Centroids of the k most populous bins, by count descending then bin index.
std::vector<Rgb> top_colors(const ColorHistogram& h, int k);

}  // namespace mockdiff
