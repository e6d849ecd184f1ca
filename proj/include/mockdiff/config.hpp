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

// Flat key=value configuration files for the analysis thresholds.
//
//   # comment
//   lt = 5
//   exclusion_regions = 0,0,1080,200; 0,1800,1080,120

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mockdiff/model.hpp"

namespace mockdiff {

struct ConfigOverrides {
  std::optional<double> mt;
  std::optional<double> dt;
  std::optional<double> lt;
  std::optional<double> ct;
  std::optional<double> idt;
  // Appended to the regions from the file.
  std::vector<BoundingBox> exclude;
};

// Throws ConfigError naming the line on unknown keys or malformed values.
AnalysisConfig parse_config_text(std::string_view text);

// Defaults, then the file (when given), then the overrides.
AnalysisConfig load_config(const std::optional<std::filesystem::path>& path,
                           const ConfigOverrides& overrides = {});

// "x,y,w,h"
BoundingBox parse_region(std::string_view s);

double parse_number(std::string_view s, std::string_view what);

std::string emit_config(const AnalysisConfig& config);

}  // namespace mockdiff
