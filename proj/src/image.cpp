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

#include <png.h>

#include <cstdio>
#include <cstring>

#include "mockdiff/error.hpp"

namespace mockdiff {

std::string to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

Image::Image(int width, int height, Rgb fill)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
              fill) {}

void Image::fill(const BoundingBox& box, Rgb color) {
  const auto clipped = intersect(box, bounds());
  if (!clipped) return;
  for (int y = clipped->y; y < clipped->bottom(); ++y) {
    for (int x = clipped->x; x < clipped->right(); ++x) at(x, y) = color;
  }
}

Image crop_image(const Image& img, const BoundingBox& box) {
  const auto clipped = intersect(box, img.bounds());
  if (!clipped) {
    throw Error(ErrorCode::kEmptyCrop, "box does not intersect the image");
  }
  Image out(clipped->w, clipped->h);
  for (int y = 0; y < clipped->h; ++y) {
    for (int x = 0; x < clipped->w; ++x) {
      out.at(x, y) = img.at(clipped->x + x, clipped->y + y);
    }
  }
  return out;
}

void paste_image(Image& dst, const Image& patch, int x, int y) {
  for (int py = 0; py < patch.height(); ++py) {
    const int dy = y + py;
    if (dy < 0 || dy >= dst.height()) continue;
    for (int px = 0; px < patch.width(); ++px) {
      const int dx = x + px;
      if (dx < 0 || dx >= dst.width()) continue;
      dst.at(dx, dy) = patch.at(px, py);
    }
  }
}

Image resize_nearest(const Image& img, int width, int height) {
  if (width == img.width() && height == img.height()) return img;
  Image out(width, height);
  if (img.empty()) return out;
  for (int y = 0; y < height; ++y) {
    const int sy = static_cast<int>(static_cast<std::int64_t>(y) *
                                    img.height() / height);
    for (int x = 0; x < width; ++x) {
      const int sx = static_cast<int>(static_cast<std::int64_t>(x) *
                                      img.width() / width);
      out.at(x, y) = img.at(sx, sy);
    }
  }
  return out;
}

namespace {

std::uint8_t flatten_on_white(std::uint8_t c, std::uint8_t a) {
  // c*a/255 + 255*(255-a)/255, rounded
  const unsigned v = c * a + 255u * (255u - a);
  return static_cast<std::uint8_t>((v + 127u) / 255u);
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw Error(ErrorCode::kIoError,
                "cannot read PNG " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGBA;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw Error(ErrorCode::kIoError, "cannot decode PNG " + path.string() +
                                         ": " + msg);
  }
  Image img(static_cast<int>(png.width), static_cast<int>(png.height));
  auto& px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const png_byte* p = &buf[i * 4];
    px[i] = {flatten_on_white(p[0], p[3]), flatten_on_white(p[1], p[3]),
             flatten_on_white(p[2], p[3])};
  }
  return img;
}

void save_png(const Image& img, const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.width());
  png.height = static_cast<png_uint_32>(img.height());
  png.format = PNG_FORMAT_RGB;
  static_assert(sizeof(Rgb) == 3);
  if (!png_image_write_to_file(&png, path.c_str(), 0, img.pixels().data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kIoError,
                "cannot write PNG " + path.string() + ": " + png.message);
  }
}

}  // namespace mockdiff
