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

#include "mockdiff/report.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "mockdiff/error.hpp"
#include "mockdiff/ingest.hpp"

namespace mockdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string id_suffix(const std::string& resource_id) {
  const auto pos = resource_id.find("id/");
  return pos == std::string::npos ? resource_id : resource_id.substr(pos + 3);
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

}  // namespace

std::vector<SourceLink> link_source(const std::string& resource_id,
                                    const fs::path& src_dir) {
  std::error_code ec;
  if (!fs::is_directory(src_dir, ec)) {
    throw Error(ErrorCode::kIoError, "source directory " + src_dir.string() +
                                         " is not readable");
  }
  const auto suffix = id_suffix(resource_id);
  const auto res = src_dir / "res";
  if (suffix.empty() || !fs::is_directory(res, ec)) return {};

  const std::string needle = "@+id/" + suffix;
  std::vector<SourceLink> out;
  fs::recursive_directory_iterator it(res, ec), end;
  if (ec) throw Error(ErrorCode::kIoError, "cannot read " + res.string());
  for (; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::kIoError, "cannot read " + res.string());
    if (!it->is_regular_file(ec) || it->path().extension() != ".xml") continue;
    std::ifstream in(it->path());
    if (!in) throw Error(ErrorCode::kIoError, "cannot read " + it->path().string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      for (auto pos = line.find(needle); pos != std::string::npos;
           pos = line.find(needle, pos + 1)) {
        const auto after = pos + needle.size();
        if (after < line.size() && ident_char(line[after])) continue;
        out.push_back({fs::relative(it->path(), src_dir).generic_string(),
                       line_no});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.path, a.line) < std::tie(b.path, b.line);
  });
  return out;
}

namespace {

void draw_border(Image& img, const BoundingBox& box, Rgb color) {
  const auto b = clamp_into(box, img.bounds());
  if (b.empty()) return;
  const int t = std::min({kHighlightWidth, (b.w + 1) / 2, (b.h + 1) / 2});
  img.fill({b.x, b.y, b.w, t}, color);
  img.fill({b.x, b.bottom() - t, b.w, t}, color);
  img.fill({b.x, b.y, t, b.h}, color);
  img.fill({b.right() - t, b.y, t, b.h}, color);
}

}  // namespace

Image annotate(const Image& screenshot,
               const std::vector<DesignViolation>& violations) {
  Image out = screenshot;
  // Missing components first so implementation borders stay exact.
  for (const auto& v : violations) {
    if (!v.impl_box() && v.mockup_box()) draw_border(out, *v.mockup_box(), kMissingHighlight);
  }
  for (const auto& v : violations) {
    if (v.impl_box()) draw_border(out, *v.impl_box(), kHighlight);
  }
  return out;
}

Image render_diff(const Image& screenshot, const DifferenceImage& diff) {
  Image out = screenshot;
  for (auto& p : out.pixels()) {
    p = {static_cast<std::uint8_t>(p.r * 35 / 100 + 166),
         static_cast<std::uint8_t>(p.g * 35 / 100 + 166),
         static_cast<std::uint8_t>(p.b * 35 / 100 + 166)};
  }
  if (diff.width() == out.width() && diff.height() == out.height()) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        if (diff.at(x, y)) out.at(x, y) = {255, 0, 0};
      }
    }
  }
  return out;
}

json report_document(const std::vector<DesignViolation>& violations,
                     const ReportOptions& options,
                     const std::string& generated_at) {
  json list = json::array();
  for (const auto& v : violations) list.push_back(to_json(v));
  return {{"screen", options.screen},
          {"generated_at", generated_at},
          {"config", to_json(options.config)},
          {"violations", list}};
}

namespace {

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

std::string now_utc() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

const GuiComponent* find_by_id(const GuiComponent& n, const std::string& id) {
  if (n.id == id) return &n;
  for (const auto& c : n.children) {
    if (const auto* f = find_by_id(c, id)) return f;
  }
  return nullptr;
}

std::string swatches(const json& colors) {
  std::string out;
  for (const auto& c : colors) {
    const auto hex = c.get<std::string>();
    out += fmt::format(
        "<span class=\"swatch\" style=\"background:{0}\"></span><code>{0}</code>",
        hex);
  }
  return out;
}

constexpr const char* kStyle = R"(body{font-family:sans-serif;margin:24px;color:#222}
.screens{display:flex;gap:24px;align-items:flex-start}
.screens figure{margin:0;width:360px}
.screens img{width:100%;border:1px solid #ccc}
.frame{position:relative}
.badge{position:absolute;transform:translate(-50%,-50%);background:#d00;color:#fff;
border-radius:12px;min-width:24px;height:24px;line-height:24px;text-align:center;
font-size:13px;text-decoration:none}
h2 .badge{position:static;display:inline-block;transform:none}
.crops img{max-width:240px;max-height:240px;border:1px solid #ccc;margin-right:12px}
.swatch{display:inline-block;width:18px;height:18px;border:1px solid #888;
vertical-align:middle;margin:0 4px 0 12px}
.none{font-size:18px;color:#070}
)";

}  // namespace

void render_report(const Screen& mockup, const Screen& impl,
                   const std::vector<DesignViolation>& violations,
                   const DifferenceImage& diff, const ReportOptions& options,
                   const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "crops", ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string());

  const std::string generated_at = options.timestamp.value_or(now_utc());
  save_png(mockup.screenshot(), out_dir / "mockup.png");
  save_png(annotate(impl.screenshot(), violations), out_dir / "annotated.png");
  save_png(render_diff(impl.screenshot(), diff), out_dir / "diff.png");

  const double w = impl.width();
  const double h = impl.height();
  std::string badges;
  std::map<std::tuple<int, int, int, int>, int> stacked;
  std::string items;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    const auto n = i + 1;
    const auto box = v.anchor_box();
    const int k = stacked[{box.x, box.y, box.w, box.h}]++;
    badges += fmt::format(
        "<a class=\"badge\" href=\"#v{}\" style=\"left:{:.3f}%;top:{:.3f}%;"
        "margin-left:{}px\">{}</a>\n",
        n, 100.0 * box.x / w, 100.0 * box.y / h, 26 * k, n);

    std::string crops;
    if (v.mockup_box() && !v.mockup_box()->empty()) {
      const auto name = fmt::format("crops/v{}_mockup.png", n);
      save_png(crop(mockup, *v.mockup_box()), out_dir / name);
      crops += fmt::format(
          "<figure><img src=\"{}\" alt=\"mock-up\"><figcaption>mock-up"
          "</figcaption></figure>",
          name);
    }
    if (v.impl_box() && !v.impl_box()->empty()) {
      const auto name = fmt::format("crops/v{}_impl.png", n);
      save_png(crop(impl, *v.impl_box()), out_dir / name);
      crops += fmt::format(
          "<figure><img src=\"{}\" alt=\"implementation\"><figcaption>"
          "implementation</figcaption></figure>",
          name);
    }

    std::string colors;
    const auto& ev = v.evidence();
    if (ev.contains("mockup_colors") && ev.contains("impl_colors")) {
      colors = fmt::format(
          "<div class=\"swatches\"><div>mock-up {}</div><div>implementation "
          "{}</div></div>\n",
          swatches(ev.at("mockup_colors")), swatches(ev.at("impl_colors")));
    }

    std::string sources;
    if (options.src_dir && v.impl_gc()) {
      const auto* gc = find_by_id(impl.root(), *v.impl_gc());
      if (gc && gc->resource_id) {
        for (const auto& link : link_source(*gc->resource_id, *options.src_dir)) {
          sources += fmt::format("<li><code>{}:{}</code></li>",
                                 html_escape(link.path), link.line);
        }
      }
      if (!sources.empty()) sources = "<ul class=\"sources\">" + sources + "</ul>\n";
    }

    items += fmt::format(
        "<li id=\"v{0}\" class=\"violation\"><h2><span class=\"badge\">{0}"
        "</span> {1} / {2}</h2>\n<p>{3}</p>\n<div class=\"crops\">{4}</div>\n"
        "{5}{6}</li>\n",
        n, to_string(v.category()), to_string(v.subtype()),
        html_escape(v.description()), crops, colors, sources);
  }

  std::string html = fmt::format(
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">\n"
      "<title>Design violations: {0}</title>\n<style>\n{1}</style></head>\n"
      "<body>\n<h1>Design violation report</h1>\n"
      "<p class=\"meta\">Screen <code>{0}</code>, generated {2}, {3} "
      "violation(s). Machine-readable results: "
      "<a href=\"report.json\">report.json</a>.</p>\n",
      html_escape(options.screen), kStyle, html_escape(generated_at),
      violations.size());
  if (violations.empty()) {
    html += "<p class=\"none\">Result: no design violations detected.</p>\n";
  }
  html += fmt::format(
      "<section class=\"screens\">\n<figure><figcaption>Mock-up</figcaption>"
      "<img src=\"mockup.png\" alt=\"mock-up\"></figure>\n"
      "<figure><figcaption>Implementation</figcaption><div class=\"frame\">"
      "<img src=\"annotated.png\" alt=\"implementation\">\n{}</div></figure>\n"
      "</section>\n",
      badges);
  if (!violations.empty()) {
    html += "<ol class=\"violations\">\n" + items + "</ol>\n";
  }
  html +=
      "<details class=\"diff\"><summary>Perceptual difference image"
      "</summary><img src=\"diff.png\" alt=\"difference\"></details>\n"
      "</body></html>\n";
  write_file(out_dir / "index.html", html);
  write_file(out_dir / "report.json",
             report_document(violations, options, generated_at).dump(2) + "\n");
}

ScreenReport parse_report(const json& doc) {
  try {
    ScreenReport out;
    out.screen = doc.at("screen").get<std::string>();
    for (const auto& v : doc.at("violations")) {
      out.violations.push_back(violation_from_json(v));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed report document: ") + e.what());
  }
}

ScreenReport read_report(const fs::path& file) {
  json doc;
  try {
    doc = json::parse(read_text_file(file));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, file.string() + ": " + e.what());
  }
  return parse_report(doc);
}

}  // namespace mockdiff
