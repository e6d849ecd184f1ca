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

#include "mockdiff/eval.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "mockdiff/error.hpp"

namespace mockdiff {

namespace {

double ratio(int num, int den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / den;
}

BoundingBox entry_anchor(const InjectionRecord& r) {
  if (r.subtype == Subtype::kMissingComponent || !r.impl_box) {
    return r.mockup_box;
  }
  return *r.impl_box;
}

}  // namespace

double Counts::dp() const { return ratio(tp, tp + fp); }
double Counts::cp() const { return ratio(classified, tp + fp); }
double Counts::r() const { return ratio(tp, tp + fn); }

EvalScores score(const std::vector<ScreenReport>& reports,
                 const std::vector<ManifestEntry>& manifest,
                 const EvalOptions& options) {
  std::map<std::string, std::vector<const InjectionRecord*>> entries;
  for (const auto& e : manifest) entries[e.screen_id].push_back(&e.record);
  std::map<std::string, std::vector<const DesignViolation*>> reported;
  for (const auto& r : reports) {
    if (!entries.count(r.screen) && !options.screens.count(r.screen)) {
      throw Error(ErrorCode::kEvalError, "unknown screen id " + r.screen);
    }
    auto& list = reported[r.screen];
    for (const auto& v : r.violations) list.push_back(&v);
  }
  for (const auto& s : options.screens) entries[s];

  EvalScores out;
  for (const auto& [screen, injected] : entries) {
    const auto& found = reported[screen];
    struct Candidate {
      double iou;
      std::size_t report;
      std::size_t entry;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t j = 0; j < injected.size(); ++j) {
        const double o = iou(found[i]->anchor_box(), entry_anchor(*injected[j]));
        if (o >= 0.5) candidates.push_back({o, i, j});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return std::tie(b.iou, a.report, a.entry) <
                       std::tie(a.iou, b.report, b.entry);
              });
    std::vector<bool> report_used(found.size(), false);
    std::vector<bool> entry_used(injected.size(), false);
    for (const auto& c : candidates) {
      if (report_used[c.report] || entry_used[c.entry]) continue;
      report_used[c.report] = true;
      entry_used[c.entry] = true;
      const Subtype want = injected[c.entry]->subtype;
      const Subtype got = found[c.report]->subtype();
      const bool correct = options.category_level
                               ? category_of(want) == category_of(got)
                               : want == got;
      for (Counts* k : {&out.total, &out.per_subtype[want]}) {
        ++k->tp;
        if (correct) ++k->classified;
      }
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (report_used[i]) continue;
      ++out.total.fp;
      ++out.per_subtype[found[i]->subtype()].fp;
    }
    for (std::size_t j = 0; j < injected.size(); ++j) {
      if (entry_used[j]) continue;
      ++out.total.fn;
      ++out.per_subtype[injected[j]->subtype].fn;
    }
  }
  return out;
}

std::string summary_table(const EvalScores& s) {
  std::string out = fmt::format("{:<22}{:>5}{:>5}{:>5}{:>5}{:>8}{:>8}{:>8}\n",
                                "subtype", "tp", "mis", "fp", "fn", "DP", "CP",
                                "R");
  auto row = [&](std::string_view name, const Counts& c) {
    out += fmt::format("{:<22}{:>5}{:>5}{:>5}{:>5}{:>8.3f}{:>8.3f}{:>8.3f}\n",
                       name, c.tp, c.misclassified(), c.fp, c.fn, c.dp(),
                       c.cp(), c.r());
  };
  for (const auto& [subtype, c] : s.per_subtype) row(to_string(subtype), c);
  row("overall", s.total);
  return out;
}

nlohmann::json to_json(const EvalScores& s) {
  auto counts = [](const Counts& c) {
    return nlohmann::json{{"tp", c.tp},
                          {"classified", c.classified},
                          {"misclassified", c.misclassified()},
                          {"fp", c.fp},
                          {"fn", c.fn},
                          {"dp", c.dp()},
                          {"cp", c.cp()},
                          {"r", c.r()}};
  };
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [subtype, c] : s.per_subtype) {
    per[std::string(to_string(subtype))] = counts(c);
  }
  return {{"overall", counts(s.total)}, {"per_subtype", per}};
}

}  // namespace mockdiff
