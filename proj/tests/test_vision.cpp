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


#include "mockdiff/vision.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "mockdiff/error.hpp"
#include "test_util.hpp"

namespace mockdiff {
namespace {

using testing::random_image;

// Independent colour oracle: sRGB -> XYZ (D65) -> CIE L*a*b*, CIE76 delta E.
struct LabOracle {
  double l, a, b;
};

LabOracle srgb_to_lab(Rgb c) {
  auto lin = [](int v) {
    const double s = v / 255.0;
    return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
  };
  const double r = lin(c.r), g = lin(c.g), b = lin(c.b);
  const double x = (0.4124 * r + 0.3576 * g + 0.1805 * b) / 0.95047;
  const double y = 0.2126 * r + 0.7152 * g + 0.0722 * b;
  const double z = (0.0193 * r + 0.1192 * g + 0.9505 * b) / 1.08883;
  auto f = [](double t) {
    return t > 216.0 / 24389.0 ? std::cbrt(t) : (24389.0 / 27.0 * t + 16) / 116;
  };
  return {116 * f(y) - 16, 500 * (f(x) - f(y)), 200 * (f(y) - f(z))};
}

int delta_e_count(const Image& a, const Image& b, double threshold) {
  int n = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const auto p = srgb_to_lab(a.at(x, y));
      const auto q = srgb_to_lab(b.at(x, y));
      const double d = std::sqrt((p.l - q.l) * (p.l - q.l) +
                                 (p.a - q.a) * (p.a - q.a) +
                                 (p.b - q.b) * (p.b - q.b));
      n += d > threshold;
    }
  }
  return n;
}

// Hand-binned L2 similarity over exact 4-bit bins.
double oracle_similarity(const Image& a, const Image& b) {
  std::map<int, double> ha, hb;
  for (const auto& p : a.pixels()) ha[(p.r / 16) * 256 + (p.g / 16) * 16 + p.b / 16] += 1;
  for (const auto& p : b.pixels()) hb[(p.r / 16) * 256 + (p.g / 16) * 16 + p.b / 16] += 1;
  std::map<int, double> d;
  for (auto& [k, v] : ha) d[k] += v / static_cast<double>(a.pixels().size());
  for (auto& [k, v] : hb) d[k] -= v / static_cast<double>(b.pixels().size());
  double sq = 0;
  for (auto& [k, v] : d) sq += v * v;
  return 1 - std::sqrt(sq) / std::sqrt(2.0);
}

Image solid(int w, int h, Rgb c) { return Image(w, h, c); }

Image halves(int w, int h, Rgb left, Rgb right) {
  Image img(w, h, left);
  img.fill({w / 2, 0, w - w / 2, h}, right);
  return img;
}

Image disk(int size, Rgb fg, Rgb bg) {
  Image img(size, size, bg);
  const double c = (size - 1) / 2.0;
  const double r = size * 0.35;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if ((x - c) * (x - c) + (y - c) * (y - c) <= r * r) img.at(x, y) = fg;
    }
  }
  return img;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

TEST(PerceptualDiff, IdenticalImagesGiveEmptyMask) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int size = seed % 2 ? 300 : 40;
    const auto img = random_image(size, size + 7, seed);
    EXPECT_EQ(perceptual_diff(img, img).count(), 0);
  }
}

TEST(PerceptualDiff, WhiteVersusBlackIsAllDifferent) {
  for (int size : {32, 256}) {
    const auto d = perceptual_diff(solid(size, size, {255, 255, 255}),
                                   solid(size, size, {0, 0, 0}));
    EXPECT_EQ(d.count(), static_cast<std::int64_t>(size) * size) << size;
  }
}

TEST(PerceptualDiff, DimensionMismatch) {
  EXPECT_EQ(code_of([] { perceptual_diff(Image(4, 4), Image(4, 5)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(PerceptualDiff, ShiftedBlockWithinFourTimesOfDeltaEOracle) {
  // 64x64 exercises the per-pixel fallback, 256x256 the Laplacian stack.
  for (int size : {64, 256}) {
    const Image base = solid(size, size, {128, 128, 128});
    Image shifted = base;
    shifted.fill({size / 2, size / 2, 8, 8}, {188, 188, 188});
    const int oracle = delta_e_count(base, shifted, 6.0);
    ASSERT_EQ(oracle, 64);
    const auto d = perceptual_diff(base, shifted);
    EXPECT_GE(d.count(), oracle / 4) << size;
    EXPECT_LE(d.count(), oracle * 4) << size;
    EXPECT_GE(d.count(), 64) << size;
    // Confined to a neighbourhood of the block.
    EXPECT_EQ(d.count_in({size / 2 - 8, size / 2 - 8, 24, 24}), d.count());
  }
}

TEST(PerceptualDiff, ColorFactorIsMonotone) {
  for (int size : {48, 256}) {
    // Equal-luminance-ish pure-chroma stimuli.
    Image a = solid(size, size, {150, 120, 120});
    Image b = a;
    std::mt19937 gen(size);
    for (int i = 0; i < size * size / 3; ++i) {
      const int x = static_cast<int>(gen() % size);
      const int y = static_cast<int>(gen() % size);
      const int k = static_cast<int>(gen() % 12);
      b.at(x, y) = {static_cast<std::uint8_t>(150 - k),
                    static_cast<std::uint8_t>(120 + k),
                    static_cast<std::uint8_t>(120 + k / 2)};
    }
    std::int64_t prev = -1;
    for (double cf : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 16.0}) {
      const auto n = perceptual_diff(a, b, {45, 100, cf}).count();
      EXPECT_GE(n, prev) << "size " << size << " cf " << cf;
      prev = n;
    }
    EXPECT_GT(prev, 0);
  }
}

TEST(PerceptualDiffProperty, SymmetricAsASet) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int size = seed < 3 ? 50 : 260;
    const auto a = random_image(size, size, seed);
    auto b = a;
    std::mt19937 gen(seed);
    for (int i = 0; i < size * 4; ++i) {
      b.at(static_cast<int>(gen() % size), static_cast<int>(gen() % size)) =
          {static_cast<std::uint8_t>(gen()), static_cast<std::uint8_t>(gen()),
           static_cast<std::uint8_t>(gen())};
    }
    EXPECT_EQ(perceptual_diff(a, b), perceptual_diff(b, a));
  }
}

TEST(DiffDensity, TrivialAndArithmeticCases) {
  DifferenceImage none(30, 30);
  EXPECT_EQ(diff_density(none, {3, 3, 10, 10}), 0.0);
  DifferenceImage all(30, 30);
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 30; ++x) all.set(x, y, true);
  }
  EXPECT_EQ(diff_density(all, {3, 3, 10, 10}), 1.0);
  DifferenceImage twenty(30, 30);
  for (int i = 0; i < 20; ++i) twenty.set(5 + i % 10, 5 + i / 10, true);
  EXPECT_DOUBLE_EQ(diff_density(twenty, {5, 5, 10, 10}), 0.20);
  // Clipped to the canvas: 10x10 box half off the edge covers 5x10.
  EXPECT_DOUBLE_EQ(diff_density(all, {25, 0, 10, 10}), 1.0);
  EXPECT_EQ(code_of([&] { diff_density(none, {30, 0, 5, 5}); }),
            ErrorCode::kEmptyRegion);
}

TEST(DiffDensityProperty, UnionDensityIsAreaWeightedMean) {
  std::mt19937 gen(2);
  for (int round = 0; round < 200; ++round) {
    DifferenceImage d(40, 40);
    for (int i = 0; i < 500; ++i) d.set(gen() % 40, gen() % 40, true);
    const int split = 1 + static_cast<int>(gen() % 38);
    const BoundingBox left{0, 0, split, 40};
    const BoundingBox right{split, 0, 40 - split, 40};
    const double dl = diff_density(d, left);
    const double dr = diff_density(d, right);
    const double du = diff_density(d, {0, 0, 40, 40});
    EXPECT_NEAR(du, (dl * left.area() + dr * right.area()) / 1600.0, 1e-12);
    EXPECT_GE(du, std::min(dl, dr) - 1e-12);
    EXPECT_LE(du, std::max(dl, dr) + 1e-12);
  }
}

TEST(Luma, IntegerRoundingMatchesFormula) {
  for (int i = 0; i < 2000; ++i) {
    const Rgb c{static_cast<std::uint8_t>(i * 7), static_cast<std::uint8_t>(i * 13),
                static_cast<std::uint8_t>(i * 29)};
    const double exact = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    EXPECT_LE(std::abs(luma(c) - exact), 0.5 + 1e-9);
  }
}

TEST(Binarize, UniformImageIsAllWhite) {
  const auto out = binarize(solid(9, 9, {40, 90, 10}));
  for (const auto& p : out.pixels()) EXPECT_EQ(p, (Rgb{255, 255, 255}));
  EXPECT_EQ(otsu_threshold(solid(3, 3, {0, 0, 0})), -1);
}

TEST(Binarize, BinaryImageKeepsItsShape) {
  const auto img = halves(20, 10, {0, 0, 0}, {255, 255, 255});
  EXPECT_EQ(binarize(img), img);
}

TEST(Binarize, BlueOnYellowEqualsRedOnWhite) {
  const auto a = binarize(disk(64, {0, 0, 255}, {255, 255, 0}));
  const auto b = binarize(disk(64, {255, 0, 0}, {255, 255, 255}));
  EXPECT_EQ(a, b);
}

TEST(BinarizeProperty, InvariantUnderSplitPreservingRemaps) {
  // Two-level images: any pair of levels with dark < light binarizes to the
  // same mask.
  std::mt19937 gen(5);
  const auto shape = disk(40, {0, 0, 0}, {255, 255, 255});
  const auto reference = binarize(shape);
  for (int round = 0; round < 200; ++round) {
    const int dark = static_cast<int>(gen() % 255);
    const int light = dark + 1 + static_cast<int>(gen() % (255 - dark));
    Image img = shape;
    for (auto& p : img.pixels()) {
      const auto v = static_cast<std::uint8_t>(p.r == 0 ? dark : light);
      p = {v, v, v};
    }
    EXPECT_EQ(binarize(img), reference) << dark << " " << light;
  }
}

TEST(Otsu, SplitsTwoClusters) {
  Image img(10, 1);
  for (int x = 0; x < 10; ++x) {
    const auto v = static_cast<std::uint8_t>(x < 4 ? 20 + x : 200 + x);
    img.at(x, 0) = {v, v, v};
  }
  const int t = otsu_threshold(img);
  EXPECT_GE(t, 23);
  EXPECT_LT(t, 204);
}

TEST(Histogram, SolidAndHalves) {
  const auto h = histogram(solid(8, 5, {255, 0, 0}));
  EXPECT_EQ(h.total, 40u);
  const int bin = ColorHistogram::bin_of({255, 0, 0});
  EXPECT_EQ(h.bins[bin], 40u);
  EXPECT_EQ(h.centroid(bin), (Rgb{255, 0, 0}));
  const auto h2 = histogram(halves(8, 4, {255, 0, 0}, {0, 0, 255}));
  int used = 0;
  for (auto n : h2.bins) used += n > 0;
  EXPECT_EQ(used, 2);
  EXPECT_EQ(h2.bins[bin], 16u);
}

TEST(HistogramProperty, BinsSumToPixelCount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto img = random_image(13 + seed, 7, seed);
    const auto h = histogram(img);
    std::uint64_t sum = 0;
    for (auto n : h.bins) sum += n;
    EXPECT_EQ(sum, h.total);
    EXPECT_EQ(h.total, img.pixels().size());
  }
}

TEST(HistogramSimilarity, HandComputedCases) {
  const auto red = histogram(solid(10, 10, {255, 0, 0}));
  const auto blue = histogram(solid(10, 10, {0, 0, 255}));
  const auto mixed = histogram(halves(10, 10, {255, 0, 0}, {0, 0, 255}));
  EXPECT_NEAR(histogram_similarity(red, red), 1.0, 1e-9);
  EXPECT_NEAR(histogram_similarity(red, blue), 0.0, 1e-9);
  EXPECT_NEAR(histogram_similarity(red, mixed),
              1.0 - std::sqrt(0.25 + 0.25) / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(histogram_similarity(red, mixed), 0.5, 1e-9);
  ColorHistogram empty = histogram(Image());
  EXPECT_EQ(code_of([&] { histogram_similarity(empty, red); }),
            ErrorCode::kEmptyHistogram);
}

TEST(HistogramSimilarityProperty, SymmetricBoundedAndMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    // Few colours so histograms overlap.
    Image a(12, 9), b(15, 6);
    std::mt19937 gen(seed);
    for (auto& p : a.pixels()) p = {static_cast<std::uint8_t>(gen() % 3 * 100), 0, 0};
    for (auto& p : b.pixels()) p = {static_cast<std::uint8_t>(gen() % 3 * 100), 0, 0};
    const double ab = histogram_similarity(histogram(a), histogram(b));
    EXPECT_DOUBLE_EQ(ab, histogram_similarity(histogram(b), histogram(a)));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(ab, oracle_similarity(a, b), 1e-12);
    // Equal normalized histograms at different sizes.
    Image a2(24, 9);
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 24; ++x) a2.at(x, y) = a.at(x / 2, y);
    }
    EXPECT_EQ(histogram_similarity(histogram(a), histogram(a2)), 1.0);
  }
}

TEST(TopColors, OrderingAndTies) {
  EXPECT_EQ(top_colors(histogram(solid(4, 4, {9, 9, 9})), 3),
            (std::vector<Rgb>{{9, 9, 9}}));
  Image img(10, 10, {0, 200, 0});
  img.fill({0, 0, 10, 3}, {200, 0, 0});
  img.fill({0, 9, 10, 1}, {0, 0, 200});
  // 60% green, 30% red, 10% blue.
  EXPECT_EQ(top_colors(histogram(img), 3),
            (std::vector<Rgb>{{0, 200, 0}, {200, 0, 0}, {0, 0, 200}}));
  // 50/50: the lower bin index wins.
  const auto tie = histogram(halves(10, 10, {255, 0, 0}, {0, 0, 255}));
  EXPECT_EQ(top_colors(tie, 1), (std::vector<Rgb>{{0, 0, 255}}));
}

}  // namespace
}  // namespace mockdiff
