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

// Embedded 5x7 bitmap faces used by the corpus renderer.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mockdiff/image.hpp"

namespace mockdiff {

inline constexpr int kGlyphWidth = 5;
inline constexpr int kGlyphHeight = 7;
inline constexpr int kGlyphAdvance = 6;

enum class FontFace { kBlock, kOblique };

std::string_view to_string(FontFace face);
FontFace parse_font_face(std::string_view name);
std::vector<FontFace> embedded_faces();

// Horizontal ink offset, in pixels, applied to glyph row `row` at `scale`.
int row_shear(FontFace face, int row, int scale);
// Widest shear on either side at `scale`.
int max_shear(FontFace face, int scale);

// Size of the ink box of `text` (no padding): advance * len - gap.
int text_pixel_width(std::string_view text, int scale);
inline int text_pixel_height(int scale) { return kGlyphHeight * scale; }

// Draws `text` with its unsheared ink box starting at (x, y).
void draw_text(Image& img, int x, int y, std::string_view text, FontFace face,
               int scale, Rgb color);

}  // namespace mockdiff
