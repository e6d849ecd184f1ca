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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mockdiff/error.hpp"

namespace mockdiff {

std::int64_t DifferenceImage::count() const {
  return std::count(mask_.begin(), mask_.end(), std::uint8_t{1});
}

std::int64_t DifferenceImage::count_in(const BoundingBox& box) const {
  const auto clipped = intersect(box, bounds());
  if (!clipped) return 0;
  std::int64_t n = 0;
  for (int y = clipped->y; y < clipped->bottom(); ++y) {
    const auto* row = &mask_[index(clipped->x, y)];
    for (int x = 0; x < clipped->w; ++x) n += row[x];
  }
  return n;
}

void DifferenceImage::clear(const BoundingBox& box) {
  const auto clipped = intersect(box, bounds());
  if (!clipped) return;
  for (int y = clipped->y; y < clipped->bottom(); ++y) {
    std::fill_n(&mask_[index(clipped->x, y)], clipped->w, std::uint8_t{0});
  }
}

double diff_density(const DifferenceImage& diff, const BoundingBox& box) {
  const auto clipped = intersect(box, diff.bounds());
  if (!clipped) {
    throw Error(ErrorCode::kEmptyRegion, "box does not intersect the mask");
  }
  return static_cast<double>(diff.count_in(*clipped)) /
         static_cast<double>(clipped->area());
}

namespace {

constexpr float kPi = 3.14159265f;
constexpr float kGamma = 2.2f;

float to_radians(float degrees) { return degrees * kPi / 180.f; }
float to_degrees(float radians) { return radians * 180.f / kPi; }

// Ward's threshold-vs-intensity, cd/m^2.
float tvi(float adaptation_luminance) {
  const float log_a = std::log10(adaptation_luminance);
  float r;
  if (log_a < -3.94f) {
    r = -2.86f;
  } else if (log_a < -1.44f) {
    r = std::pow(0.405f * log_a + 1.6f, 2.18f) - 2.86f;
  } else if (log_a < -0.0184f) {
    r = log_a - 0.395f;
  } else if (log_a < 1.9f) {
    r = std::pow(0.249f * log_a + 0.65f, 2.7f) - 0.72f;
  } else {
    r = log_a - 1.255f;
  }
  return std::pow(10.0f, r);
}

// Barten contrast sensitivity.
float csf(float cpd, float lum) {
  const float a = 440.f * std::pow(1.f + 0.7f / lum, -0.2f);
  const float b = 0.3f * std::pow(1.f + 100.f / lum, 0.15f);
  return a * cpd * std::exp(-b * cpd) *
         std::sqrt(1.f + 0.06f * std::exp(b * cpd));
}

// Daly visual masking.
float masking(float contrast) {
  const float a = std::pow(392.498f * contrast, 0.7f);
  const float b = std::pow(0.0153f * a, 4.f);
  return std::pow(1.f + b, 0.25f);
}

struct Xyz {
  float x, y, z;
};

Xyz adobe_rgb_to_xyz(float r, float g, float b) {
  return {r * 0.576700f + g * 0.185556f + b * 0.188212f,
          r * 0.297361f + g * 0.627355f + b * 0.0752847f,
          r * 0.0270328f + g * 0.0706879f + b * 0.991248f};
}

const Xyz& white_point() {
  static const Xyz w = adobe_rgb_to_xyz(1.f, 1.f, 1.f);
  return w;
}

struct Lab {
  float l, a, b;
};

Lab xyz_to_lab(const Xyz& c) {
  constexpr float kEpsilon = 216.0f / 24389.0f;
  constexpr float kKappa = 24389.0f / 27.0f;
  const auto& w = white_point();
  const float r[3] = {c.x / w.x, c.y / w.y, c.z / w.z};
  float f[3];
  for (int i = 0; i < 3; ++i) {
    f[i] = r[i] > kEpsilon ? std::cbrt(r[i]) : (kKappa * r[i] + 16.0f) / 116.0f;
  }
  return {116.0f * f[1] - 16.0f, 500.0f * (f[0] - f[1]),
          200.0f * (f[1] - f[2])};
}

const std::array<float, 256>& linear_table() {
  static const auto table = [] {
    std::array<float, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = std::pow(i / 255.f, kGamma);
    return t;
  }();
  return table;
}

Xyz to_xyz(Rgb c) {
  const auto& lin = linear_table();
  return adobe_rgb_to_xyz(lin[c.r], lin[c.g], lin[c.b]);
}

// Same-resolution Laplacian stack; level i is level i-1 blurred once.
class LuminanceStack {
 public:
  LuminanceStack(std::vector<float> base, int width, int height)
      : width_(width), height_(height) {
    levels_[0] = std::move(base);
    std::vector<float> tmp(levels_[0].size());
    for (int i = 1; i < kPyramidLevels; ++i) {
      levels_[i].resize(levels_[0].size());
      blur(levels_[i - 1], tmp, levels_[i]);
    }
  }

  float at(int x, int y, int level) const {
    return levels_[level][static_cast<std::size_t>(y) * width_ + x];
  }

 private:
  static int mirror(int v, int n) {
    v = std::max(v, -v);
    if (v >= n) v = 2 * n - v - 1;
    return v;
  }

  void blur(const std::vector<float>& src, std::vector<float>& tmp,
            std::vector<float>& dst) const {
    static constexpr float kKernel[5] = {0.05f, 0.25f, 0.4f, 0.25f, 0.05f};
    const std::size_t w = static_cast<std::size_t>(width_);
    for (int y = 0; y < height_; ++y) {
      const float* row = &src[y * w];
      float* out = &tmp[y * w];
      for (int x = 0; x < width_; ++x) {
        float acc = 0.f;
        if (x >= 2 && x + 2 < width_) {
          for (int k = -2; k <= 2; ++k) acc += kKernel[k + 2] * row[x + k];
        } else {
          for (int k = -2; k <= 2; ++k) {
            acc += kKernel[k + 2] * row[mirror(x + k, width_)];
          }
        }
        out[x] = acc;
      }
    }
    for (int y = 0; y < height_; ++y) {
      const float* rows[5];
      for (int k = -2; k <= 2; ++k) {
        rows[k + 2] = &tmp[static_cast<std::size_t>(mirror(y + k, height_)) * w];
      }
      float* out = &dst[y * w];
      for (int x = 0; x < width_; ++x) {
        float acc = 0.f;
        for (int k = 0; k < 5; ++k) acc += kKernel[k] * rows[k][x];
        out[x] = acc;
      }
    }
  }

  int width_;
  int height_;
  std::array<std::vector<float>, kPyramidLevels> levels_;
};

int adaptation_level(float num_one_degree_pixels) {
  float num_pixels = 1.f;
  int level = 0;
  for (int i = 0; i < kPyramidLevels; ++i) {
    level = i;
    if (num_pixels > num_one_degree_pixels) break;
    num_pixels *= 2;
  }
  return level;
}

DifferenceImage fallback_diff(const Image& a, const Image& b,
                              const PidParams& params) {
  DifferenceImage out(a.width(), a.height());
  const auto cf = static_cast<float>(params.color_factor);
  constexpr auto kThresholdSq =
      static_cast<float>(kFallbackDeltaE * kFallbackDeltaE);
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const Rgb pa = a.at(x, y);
      const Rgb pb = b.at(x, y);
      if (pa == pb) continue;
      const Lab la = xyz_to_lab(to_xyz(pa));
      const Lab lb = xyz_to_lab(to_xyz(pb));
      const float dl = la.l - lb.l;
      const float da = la.a - lb.a;
      const float db = la.b - lb.b;
      if (dl * dl + cf * (da * da + db * db) > kThresholdSq) out.set(x, y, true);
    }
  }
  return out;
}

}  // namespace

DifferenceImage perceptual_diff(const Image& a, const Image& b,
                                const PidParams& params) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "perceptual_diff inputs differ in size");
  }
  const int w = a.width();
  const int h = a.height();
  if (a == b) return DifferenceImage(w, h);
  if (std::min(w, h) < (1 << kPyramidLevels)) return fallback_diff(a, b, params);

  const auto luminance = static_cast<float>(params.luminance_cdm2);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<float> a_lum(n);
  std::vector<float> b_lum(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_lum[i] = to_xyz(a.pixels()[i]).y * luminance;
    b_lum[i] = to_xyz(b.pixels()[i]).y * luminance;
  }
  const LuminanceStack la(std::move(a_lum), w, h);
  const LuminanceStack lb(std::move(b_lum), w, h);

  const float num_one_degree_pixels = to_degrees(
      2.f * std::tan(static_cast<float>(params.fov_degrees) * to_radians(.5f)));
  const float pixels_per_degree = static_cast<float>(w) / num_one_degree_pixels;
  const int adapt_level = adaptation_level(num_one_degree_pixels);

  float cpd[kPyramidLevels];
  cpd[0] = 0.5f * pixels_per_degree;
  for (int i = 1; i < kPyramidLevels; ++i) cpd[i] = 0.5f * cpd[i - 1];
  const float csf_max = csf(3.248f, 100.0f);
  float freq_factor[kPyramidLevels - 2];
  for (int i = 0; i < kPyramidLevels - 2; ++i) {
    freq_factor[i] = csf_max / csf(cpd[i], 100.0f);
  }
  const auto color_factor = static_cast<float>(params.color_factor);

  DifferenceImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb pa = a.at(x, y);
      const Rgb pb = b.at(x, y);
      // Identical pixels have zero luminance and chroma delta, which never
      // exceeds a threshold that is at least tvi() * 1.
      if (pa == pb) continue;

      const float adapt = std::max(
          (la.at(x, y, adapt_level) + lb.at(x, y, adapt_level)) * 0.5f, 1e-5f);
      float sum_contrast = 0.f;
      float factor = 0.f;
      for (int i = 0; i < kPyramidLevels - 2; ++i) {
        const float n1 = std::abs(la.at(x, y, i) - la.at(x, y, i + 1));
        const float n2 = std::abs(lb.at(x, y, i) - lb.at(x, y, i + 1));
        const float numerator = std::max(n1, n2);
        const float d1 = std::abs(la.at(x, y, i + 2));
        const float d2 = std::abs(lb.at(x, y, i + 2));
        const float denominator = std::max(std::max(d1, d2), 1e-5f);
        const float contrast = numerator / denominator;
        const float f_mask = masking(contrast * csf(cpd[i], adapt));
        factor += contrast * freq_factor[i] * f_mask;
        sum_contrast += contrast;
      }
      sum_contrast = std::max(sum_contrast, 1e-5f);
      factor = std::clamp(factor / sum_contrast, 1.f, 10.f);

      const float delta = std::abs(la.at(x, y, 0) - lb.at(x, y, 0));
      bool different = delta > factor * tvi(adapt);
      if (!different && adapt >= 10.0f) {
        const Lab ca = xyz_to_lab(to_xyz(pa));
        const Lab cb = xyz_to_lab(to_xyz(pb));
        const float da = ca.a - cb.a;
        const float db = ca.b - cb.b;
        different = (da * da + db * db) * color_factor > factor;
      }
      if (different) out.set(x, y, true);
    }
  }
  return out;
}

std::uint8_t luma(Rgb c) {
  // Integer form of round(0.299 R + 0.587 G + 0.114 B).
  const unsigned v = 299u * c.r + 587u * c.g + 114u * c.b;
  return static_cast<std::uint8_t>((v + 500u) / 1000u);
}

int otsu_threshold(const Image& img) {
  std::array<std::uint64_t, 256> hist{};
  for (const auto& p : img.pixels()) ++hist[luma(p)];
  const double total = static_cast<double>(img.pixels().size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += i * static_cast<double>(hist[i]);

  double weight_dark = 0.0;
  double sum_dark = 0.0;
  double best = -1.0;
  int threshold = -1;
  for (int t = 0; t < 255; ++t) {
    weight_dark += static_cast<double>(hist[t]);
    sum_dark += t * static_cast<double>(hist[t]);
    const double weight_light = total - weight_dark;
    if (weight_dark == 0.0 || weight_light == 0.0) continue;
    const double mean_dark = sum_dark / weight_dark;
    const double mean_light = (sum_all - sum_dark) / weight_light;
    const double between = weight_dark * weight_light *
                           (mean_dark - mean_light) * (mean_dark - mean_light);
    if (between > best) {
      best = between;
      threshold = t;
    }
  }
  return threshold;
}

Image binarize(const Image& img) {
  const int t = otsu_threshold(img);
  Image out(img.width(), img.height());
  auto& dst = out.pixels();
  const auto& src = img.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = luma(src[i]) <= t ? Rgb{0, 0, 0} : Rgb{255, 255, 255};
  }
  return out;
}

Rgb ColorHistogram::centroid(int bin) const {
  const auto count = bins[bin];
  if (count == 0) return {};
  auto mean = [&](int ch) {
    return static_cast<std::uint8_t>((sums[bin][ch] + count / 2) / count);
  };
  return {mean(0), mean(1), mean(2)};
}

ColorHistogram histogram(const Image& img) {
  ColorHistogram h;
  h.bins.assign(kHistogramBins, 0);
  h.sums.assign(kHistogramBins, {0, 0, 0});
  for (const auto& p : img.pixels()) {
    const int bin = ColorHistogram::bin_of(p);
    ++h.bins[bin];
    h.sums[bin][0] += p.r;
    h.sums[bin][1] += p.g;
    h.sums[bin][2] += p.b;
  }
  h.total = img.pixels().size();
  return h;
}

double histogram_similarity(const ColorHistogram& h1,
                            const ColorHistogram& h2) {
  if (h1.total == 0 || h2.total == 0) {
    throw Error(ErrorCode::kEmptyHistogram, "histogram has no pixels");
  }
  const double t1 = static_cast<double>(h1.total);
  const double t2 = static_cast<double>(h2.total);
  double sq = 0.0;
  for (int i = 0; i < kHistogramBins; ++i) {
    if (h1.bins[i] == 0 && h2.bins[i] == 0) continue;
    const double d = static_cast<double>(h1.bins[i]) / t1 -
                     static_cast<double>(h2.bins[i]) / t2;
    sq += d * d;
  }
  return std::clamp(1.0 - std::sqrt(sq) / std::sqrt(2.0), 0.0, 1.0);
}

std::vector<Rgb> top_colors(const ColorHistogram& h, int k) {
  std::vector<int> order;
  for (int i = 0; i < kHistogramBins; ++i) {
    if (h.bins[i] > 0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h.bins[a] > h.bins[b]; });
  if (static_cast<int>(order.size()) > k) order.resize(static_cast<std::size_t>(k));
  std::vector<Rgb> out;
  out.reserve(order.size());
  for (int bin : order) out.push_back(h.centroid(bin));
  return out;
}

}  // namespace mockdiff
