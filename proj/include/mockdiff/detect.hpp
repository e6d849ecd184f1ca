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

// The violation manager: turns matched pairs and the difference image into
// classified design violations.

#pragma once

#include <string>
#include <vector>

#include "mockdiff/match.hpp"
#include "mockdiff/model.hpp"
#include "mockdiff/vision.hpp"

namespace mockdiff {

struct ComponentPair {
  const GuiComponent& mockup;
  const GuiComponent& impl;
};

struct PairCrops {
  Image mockup;
  Image impl;
};

struct SuspiciousPair {
  std::string mockup_id;
  std::string impl_id;
  double density = 0.0;
};

// Text-based when the implementation class is a TextView/EditText or either
// side carries non-empty text.
bool is_text_based(const ComponentPair& pair);

// Whitespace removed, ASCII letters lower-cased.
std::string normalize_text(std::string_view text);

// Translation family (x, y, both) and size family (width, height, both),
// each emitted when the absolute delta is strictly greater than LT.
std::vector<DesignViolation> detect_layout(const ComponentPair& pair,
                                           const AnalysisConfig& config);

// Text content, then font colour (histogram similarity < CT), then font
// style when the pair has no layout violation. At most one result.
std::vector<DesignViolation> detect_text(const ComponentPair& pair,
                                         const PairCrops& crops,
                                         const AnalysisConfig& config,
                                         bool has_layout_violation);

// Binary-space PID density > IDT gives IncorrectImage; otherwise histogram
// similarity < CT gives ImageColor (class name containing "Image") or
// ComponentColor. At most one result.
std::vector<DesignViolation> detect_resource(const ComponentPair& pair,
                                             const PairCrops& crops,
                                             const AnalysisConfig& config);

struct AnalysisResult {
  std::vector<DesignViolation> violations;
  MatchResult match;
  std::vector<GuiComponent> mockup_leaves;  // after merging
  std::vector<GuiComponent> impl_leaves;
  std::vector<SuspiciousPair> suspicious;
  DifferenceImage diff;  // exclusion regions already cleared
};

AnalysisResult analyze_detailed(const Screen& mockup, const Screen& impl,
                                const AnalysisConfig& config);

// Violations in canonical order: implementation pre-order, then subtype;
// missing components last, in mock-up order.
std::vector<DesignViolation> analyze(const Screen& mockup, const Screen& impl,
                                     const AnalysisConfig& config);

}  // namespace mockdiff
