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

#include "mockdiff/config.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "mockdiff/error.hpp"
#include "mockdiff/ingest.hpp"

namespace mockdiff {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

double parse_number(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(v)) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("{}: \"{}\" is not a number", what, s));
  }
  return v;
}

BoundingBox parse_region(std::string_view s) {
  const auto parts = split(trim(s), ',');
  if (parts.size() != 4) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("region \"{}\" must be x,y,w,h", s));
  }
  int v[4];
  for (int i = 0; i < 4; ++i) {
    const auto p = trim(parts[i]);
    const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v[i]);
    if (p.empty() || ec != std::errc() || ptr != p.data() + p.size()) {
      throw Error(ErrorCode::kConfigError,
                  fmt::format("region \"{}\" must be four integers", s));
    }
  }
  if (v[2] < 0 || v[3] < 0) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("region \"{}\" has a negative size", s));
  }
  return {v[0], v[1], v[2], v[3]};
}

AnalysisConfig parse_config_text(std::string_view text) {
  AnalysisConfig c;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError,
                  fmt::format("line {}: expected key = value", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto what = fmt::format("line {}: {}", line_no, key);
    if (key == "mt") {
      c.mt = parse_number(value, what);
    } else if (key == "dt") {
      c.dt = parse_number(value, what);
    } else if (key == "lt") {
      c.lt = parse_number(value, what);
    } else if (key == "ct") {
      c.ct = parse_number(value, what);
    } else if (key == "idt") {
      c.idt = parse_number(value, what);
    } else if (key == "pid_fov_degrees") {
      c.pid_fov_degrees = parse_number(value, what);
    } else if (key == "pid_luminance_cdm2") {
      c.pid_luminance_cdm2 = parse_number(value, what);
    } else if (key == "pid_color_factor") {
      c.pid_color_factor = parse_number(value, what);
    } else if (key == "exclusion_regions") {
      c.exclusion_regions.clear();
      for (auto region : split(value, ';')) {
        if (trim(region).empty()) continue;
        try {
          c.exclusion_regions.push_back(parse_region(region));
        } catch (const Error& e) {
          throw Error(ErrorCode::kConfigError,
                      fmt::format("line {}: {}", line_no, e.what()));
        }
      }
    } else {
      throw Error(ErrorCode::kConfigError,
                  fmt::format("line {}: unknown key \"{}\"", line_no, key));
    }
  }
  c.validate();
  return c;
}

AnalysisConfig load_config(const std::optional<std::filesystem::path>& path,
                           const ConfigOverrides& overrides) {
  AnalysisConfig c;
  if (path) {
    std::string text;
    try {
      text = read_text_file(*path);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, e.what());
    }
    c = parse_config_text(text);
  }
  if (overrides.mt) c.mt = *overrides.mt;
  if (overrides.dt) c.dt = *overrides.dt;
  if (overrides.lt) c.lt = *overrides.lt;
  if (overrides.ct) c.ct = *overrides.ct;
  if (overrides.idt) c.idt = *overrides.idt;
  c.exclusion_regions.insert(c.exclusion_regions.end(),
                             overrides.exclude.begin(), overrides.exclude.end());
  c.validate();
  return c;
}

std::string emit_config(const AnalysisConfig& c) {
  std::string out;
  if (c.mt) out += fmt::format("mt = {}\n", *c.mt);
  out += fmt::format("dt = {}\nlt = {}\nct = {}\nidt = {}\n", c.dt, c.lt, c.ct,
                     c.idt);
  out += fmt::format(
      "pid_fov_degrees = {}\npid_luminance_cdm2 = {}\npid_color_factor = {}\n",
      c.pid_fov_degrees, c.pid_luminance_cdm2, c.pid_color_factor);
  if (!c.exclusion_regions.empty()) {
    out += "exclusion_regions = ";
    for (std::size_t i = 0; i < c.exclusion_regions.size(); ++i) {
      const auto& r = c.exclusion_regions[i];
      out += fmt::format("{}{},{},{},{}", i ? "; " : "", r.x, r.y, r.w, r.h);
    }
    out += "\n";
  }
  return out;
}

}  // namespace mockdiff
