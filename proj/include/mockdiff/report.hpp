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

// Report bundles: index.html, annotated.png, diff.png, crops/ and
// report.json, all linked by relative paths.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mockdiff/eval.hpp"
#include "mockdiff/model.hpp"
#include "mockdiff/vision.hpp"

namespace mockdiff {

inline constexpr Rgb kHighlight{255, 0, 0};
inline constexpr Rgb kMissingHighlight{255, 140, 0};
inline constexpr int kHighlightWidth = 3;

struct SourceLink {
  std::string path;  // relative to the source root, '/' separated
  int line = 0;

  friend bool operator==(const SourceLink&, const SourceLink&) = default;
};

// Layout XML under src_dir/res declaring "@+id/<suffix>", where suffix is the
// part of `resource_id` after "id/". Sorted by path, then line.
std::vector<SourceLink> link_source(const std::string& resource_id,
                                    const std::filesystem::path& src_dir);

struct ReportOptions {
  std::string screen;
  AnalysisConfig config;
  std::optional<std::filesystem::path> src_dir;
  // Written verbatim as generated_at; the current UTC time when unset.
  std::optional<std::string> timestamp;
};

// Implementation screenshot with a border drawn inside every flagged box.
Image annotate(const Image& screenshot,
               const std::vector<DesignViolation>& violations);

// Faded screenshot with difference pixels in red.
Image render_diff(const Image& screenshot, const DifferenceImage& diff);

nlohmann::json report_document(const std::vector<DesignViolation>& violations,
                               const ReportOptions& options,
                               const std::string& generated_at);

void render_report(const Screen& mockup, const Screen& impl,
                   const std::vector<DesignViolation>& violations,
                   const DifferenceImage& diff, const ReportOptions& options,
                   const std::filesystem::path& out_dir);

ScreenReport parse_report(const nlohmann::json& doc);
ScreenReport read_report(const std::filesystem::path& file);

}  // namespace mockdiff
