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

// Readers for the two screen flavours.
//
// Mock-up spec (UTF-8 JSON, integer pixels, origin top-left, absolute
// coordinates):
//
//   {"canvas": {"width": W, "height": H},
//    "objects": [{"name": ..., "x": ..., "y": ..., "width": ..., "height": ...,
//                 "text": ..., "font": ..., "children": [...]}, ...]}
//
// Runtime dump: uiautomator-style XML, `<node>` elements with
// bounds="[x1,y1][x2,y2]" (bottom-right exclusive), class, text, resource-id,
// package. Other attributes and elements are ignored.
//
// Component ids: mock-up objects get their index path ("m/0/2"); runtime
// nodes get "n<pre-order index>" plus ":<id suffix>" when a resource-id is
// present. Roots are "m" and "root" respectively.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mockdiff/model.hpp"

namespace mockdiff {

struct MockupBundle {
  std::filesystem::path spec_path;
  std::filesystem::path screenshot_path;
};

struct ImplBundle {
  std::filesystem::path dump_path;
  std::filesystem::path screenshot_path;
};

struct CanvasSize {
  int width = 0;
  int height = 0;
};

// When `target` is given and differs from the declared canvas, boxes and
// the screenshot are scaled (nearest integer / nearest neighbour) to it.
Screen parse_mockup(const MockupBundle& bundle,
                    std::optional<CanvasSize> target = std::nullopt);
Screen parse_mockup_text(std::string_view spec, Image screenshot,
                         std::optional<CanvasSize> target = std::nullopt);

Screen parse_impl(const ImplBundle& bundle);
Screen parse_impl_text(std::string_view dump, Image screenshot);

// Parses "[x1,y1][x2,y2]" into a box with w = x2 - x1, h = y2 - y1.
BoundingBox parse_bounds(std::string_view bounds);

Screen scale_screen(const Screen& screen, CanvasSize target);

// Debug emitters; parsing their output reproduces the screen.
std::string emit_mockup_spec(const Screen& screen);
std::string emit_impl_dump(const Screen& screen);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace mockdiff
