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

// Detection precision (DP), classification precision (CP) and recall (R) of
// reported violations against an injection manifest.

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mockdiff/inject.hpp"
#include "mockdiff/model.hpp"

namespace mockdiff {

struct ScreenReport {
  std::string screen;
  std::vector<DesignViolation> violations;
};

struct Counts {
  int tp = 0;          // injected entries matched by a report
  int classified = 0;  // matched and labelled correctly
  int fp = 0;          // reports matching no entry
  int fn = 0;          // entries no report matched

  int misclassified() const { return tp - classified; }
  double dp() const;
  double cp() const;
  double r() const;
};

struct EvalScores {
  Counts total;
  std::map<Subtype, Counts> per_subtype;

  double dp() const { return total.dp(); }
  double cp() const { return total.cp(); }
  double r() const { return total.r(); }
};

struct EvalOptions {
  // Count a match as classified when only the category agrees.
  bool category_level = false;
  // Screens the reports may name besides those in the manifest.
  std::set<std::string> screens;
};

// Throws EvalError when a report names a screen outside the manifest and
// `options.screens`.
EvalScores score(const std::vector<ScreenReport>& reports,
                 const std::vector<ManifestEntry>& manifest,
                 const EvalOptions& options = {});

std::string summary_table(const EvalScores& scores);
nlohmann::json to_json(const EvalScores& scores);

}  // namespace mockdiff
