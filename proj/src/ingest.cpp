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

#include "mockdiff/ingest.hpp"

#include <expat.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "mockdiff/error.hpp"

namespace mockdiff {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

using nlohmann::json;

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, "mock-up spec field " + path + ": " + what);
}

int get_int(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) field_error(path + "." + key, "missing");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) field_error(path + "." + key, "expected integer");
  return v.get<int>();
}

std::optional<std::string> get_opt_string(const json& obj, const char* key,
                                          const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const auto& v = obj.at(key);
  if (!v.is_string()) field_error(path + "." + key, "expected string");
  return non_empty(v.get<std::string>());
}

GuiComponent mockup_object(const json& obj, const std::string& path,
                           const std::string& id) {
  if (!obj.is_object()) field_error(path, "expected object");
  GuiComponent gc;
  gc.id = id;
  if (!obj.contains("name") || !obj.at("name").is_string()) {
    field_error(path + ".name", "missing or not a string");
  }
  gc.name = obj.at("name").get<std::string>();
  gc.box = {get_int(obj, "x", path), get_int(obj, "y", path),
            get_int(obj, "width", path), get_int(obj, "height", path)};
  if (gc.box.w < 0 || gc.box.h < 0) field_error(path, "negative size");
  gc.text = get_opt_string(obj, "text", path);
  gc.font = get_opt_string(obj, "font", path);
  if (obj.contains("children")) {
    const auto& kids = obj.at("children");
    if (!kids.is_array()) field_error(path + ".children", "expected array");
    for (std::size_t i = 0; i < kids.size(); ++i) {
      gc.children.push_back(mockup_object(
          kids[i], path + ".children[" + std::to_string(i) + "]",
          id + "/" + std::to_string(i)));
    }
  }
  return gc;
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int scale_coord(int v, int from, int to) {
  return static_cast<int>(std::lround(static_cast<double>(v) * to / from));
}

BoundingBox scale_box(const BoundingBox& b, CanvasSize from, CanvasSize to) {
  const int x1 = scale_coord(b.x, from.width, to.width);
  const int y1 = scale_coord(b.y, from.height, to.height);
  const int x2 = scale_coord(b.right(), from.width, to.width);
  const int y2 = scale_coord(b.bottom(), from.height, to.height);
  return {x1, y1, x2 - x1, y2 - y1};
}

void scale_tree(GuiComponent& node, CanvasSize from, CanvasSize to) {
  node.box = scale_box(node.box, from, to);
  for (auto& c : node.children) scale_tree(c, from, to);
}

}  // namespace

Screen scale_screen(const Screen& screen, CanvasSize target) {
  const CanvasSize from{screen.width(), screen.height()};
  if (from.width == target.width && from.height == target.height) return screen;
  GuiComponent root = screen.root();
  scale_tree(root, from, target);
  clamp_hierarchy(root);
  return Screen(screen.kind(), std::move(root),
                resize_nearest(screen.screenshot(), target.width,
                               target.height));
}

Screen parse_mockup_text(std::string_view spec, Image screenshot,
                         std::optional<CanvasSize> target) {
  json doc;
  try {
    doc = json::parse(spec.begin(), spec.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(spec, e.byte ? e.byte - 1 : 0);
    throw Error(ErrorCode::kParseError,
                "mock-up spec line " + std::to_string(line) + " column " +
                    std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) field_error("$", "expected object");
  if (!doc.contains("canvas") || !doc.at("canvas").is_object()) {
    field_error("canvas", "missing or not an object");
  }
  const auto& canvas = doc.at("canvas");
  const CanvasSize size{get_int(canvas, "width", "canvas"),
                        get_int(canvas, "height", "canvas")};
  if (size.width <= 0 || size.height <= 0) {
    field_error("canvas", "dimensions must be positive");
  }
  if (screenshot.width() != size.width || screenshot.height() != size.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mock-up screenshot is " + std::to_string(screenshot.width()) +
                    "x" + std::to_string(screenshot.height()) +
                    " but the spec declares " + std::to_string(size.width) +
                    "x" + std::to_string(size.height));
  }

  GuiComponent root;
  root.id = "m";
  root.box = {0, 0, size.width, size.height};
  if (doc.contains("objects")) {
    const auto& objects = doc.at("objects");
    if (!objects.is_array()) field_error("objects", "expected array");
    for (std::size_t i = 0; i < objects.size(); ++i) {
      root.children.push_back(mockup_object(
          objects[i], "objects[" + std::to_string(i) + "]",
          "m/" + std::to_string(i)));
    }
  }
  clamp_hierarchy(root);
  Screen screen(ScreenKind::kMockup, std::move(root), std::move(screenshot));
  if (target) return scale_screen(screen, *target);
  return screen;
}

Screen parse_mockup(const MockupBundle& bundle,
                    std::optional<CanvasSize> target) {
  const auto text = read_text_file(bundle.spec_path);
  return parse_mockup_text(text, load_png(bundle.screenshot_path), target);
}

BoundingBox parse_bounds(std::string_view s) {
  int v[4];
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto expect = [&](char c) {
    if (p == end || *p != c) {
      throw Error(ErrorCode::kBoundsFormatError,
                  "malformed bounds \"" + std::string(s) + "\"");
    }
    ++p;
  };
  for (int i = 0; i < 4; ++i) {
    expect(i % 2 == 0 ? '[' : ',');
    const auto res = std::from_chars(p, end, v[i]);
    if (res.ec != std::errc{}) {
      throw Error(ErrorCode::kBoundsFormatError,
                  "malformed bounds \"" + std::string(s) + "\"");
    }
    p = res.ptr;
    if (i % 2 == 1) expect(']');
  }
  if (p != end) {
    throw Error(ErrorCode::kBoundsFormatError,
                "trailing characters in bounds \"" + std::string(s) + "\"");
  }
  if (v[2] < v[0] || v[3] < v[1]) {
    throw Error(ErrorCode::kBoundsFormatError,
                "inverted bounds \"" + std::string(s) + "\"");
  }
  return {v[0], v[1], v[2] - v[0], v[3] - v[1]};
}

namespace {

struct DumpParser {
  GuiComponent root;
  // Open <node> elements; nullptr entries stand for other elements.
  std::vector<GuiComponent*> stack;
  int next_index = 0;
  std::optional<Error> error;
  XML_Parser parser = nullptr;

  static void on_start(void* ud, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<DumpParser*>(ud);
    if (self->error) return;
    if (std::string_view(name) != "node") {
      self->stack.push_back(nullptr);
      return;
    }
    try {
      self->start_node(attrs);
    } catch (const Error& e) {
      self->error = e;
      XML_StopParser(self->parser, XML_FALSE);
    }
  }

  static void on_end(void* ud, const XML_Char*) {
    auto* self = static_cast<DumpParser*>(ud);
    if (!self->stack.empty()) self->stack.pop_back();
  }

  GuiComponent* parent() {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (*it) return *it;
    }
    return &root;
  }

  void start_node(const XML_Char** attrs) {
    GuiComponent gc;
    std::optional<BoundingBox> box;
    for (int i = 0; attrs[i]; i += 2) {
      const std::string_view key = attrs[i];
      const std::string value = attrs[i + 1];
      if (key == "bounds") {
        box = parse_bounds(value);
      } else if (key == "class") {
        gc.class_name = non_empty(value);
      } else if (key == "text") {
        gc.text = non_empty(value);
      } else if (key == "resource-id") {
        gc.resource_id = non_empty(value);
      }
    }
    if (!box) {
      throw Error(ErrorCode::kBoundsFormatError,
                  "node at line " +
                      std::to_string(XML_GetCurrentLineNumber(parser)) +
                      " has no bounds attribute");
    }
    gc.box = *box;
    gc.id = "n" + std::to_string(next_index++);
    if (gc.resource_id) {
      const auto& rid = *gc.resource_id;
      const auto pos = rid.find("id/");
      gc.id += ":" + (pos == std::string::npos ? rid : rid.substr(pos + 3));
    }
    auto* p = parent();
    p->children.push_back(std::move(gc));
    stack.push_back(&p->children.back());
  }
};

}  // namespace

Screen parse_impl_text(std::string_view dump, Image screenshot) {
  DumpParser state;
  state.root.id = "root";
  state.root.box = screenshot.bounds();
  // The stack only points at open ancestors; appending a child reallocates
  // the parent's children vector, which holds no open element.
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>
      parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), &DumpParser::on_start,
                        &DumpParser::on_end);
  const auto status = XML_Parse(parser.get(), dump.data(),
                                static_cast<int>(dump.size()), XML_TRUE);
  if (state.error) throw *state.error;
  if (status != XML_STATUS_OK) {
    throw Error(ErrorCode::kParseError,
                "runtime dump line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                    ": " + XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  clamp_hierarchy(state.root);
  return Screen(ScreenKind::kImplementation, std::move(state.root),
                std::move(screenshot));
}

Screen parse_impl(const ImplBundle& bundle) {
  const auto text = read_text_file(bundle.dump_path);
  return parse_impl_text(text, load_png(bundle.screenshot_path));
}

namespace {

json emit_object(const GuiComponent& gc) {
  json o;
  o["name"] = gc.name ? *gc.name : gc.id;
  o["x"] = gc.box.x;
  o["y"] = gc.box.y;
  o["width"] = gc.box.w;
  o["height"] = gc.box.h;
  if (gc.text) o["text"] = *gc.text;
  if (gc.font) o["font"] = *gc.font;
  if (!gc.children.empty()) {
    json kids = json::array();
    for (const auto& c : gc.children) kids.push_back(emit_object(c));
    o["children"] = kids;
  }
  return o;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      default: out += c;
    }
  }
  return out;
}

void emit_node(const GuiComponent& gc, int index, int depth, std::string& out) {
  const auto& b = gc.box;
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "<node index=\"" + std::to_string(index) + "\" text=\"" +
         xml_escape(gc.text.value_or("")) + "\" resource-id=\"" +
         xml_escape(gc.resource_id.value_or("")) + "\" class=\"" +
         xml_escape(gc.class_name.value_or("")) + "\" package=\"\" bounds=\"[" +
         std::to_string(b.x) + "," + std::to_string(b.y) + "][" +
         std::to_string(b.right()) + "," + std::to_string(b.bottom()) + "]\"";
  if (gc.children.empty()) {
    out += " />\n";
    return;
  }
  out += ">\n";
  for (std::size_t i = 0; i < gc.children.size(); ++i) {
    emit_node(gc.children[i], static_cast<int>(i), depth + 1, out);
  }
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</node>\n";
}

}  // namespace

std::string emit_mockup_spec(const Screen& screen) {
  json doc;
  doc["canvas"] = {{"width", screen.width()}, {"height", screen.height()}};
  json objects = json::array();
  for (const auto& c : screen.root().children) objects.push_back(emit_object(c));
  doc["objects"] = objects;
  return doc.dump(2) + "\n";
}

std::string emit_impl_dump(const Screen& screen) {
  std::string out =
      "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n"
      "<hierarchy rotation=\"0\">\n";
  const auto& kids = screen.root().children;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    emit_node(kids[i], static_cast<int>(i), 1, out);
  }
  out += "</hierarchy>\n";
  return out;
}

}  // namespace mockdiff
