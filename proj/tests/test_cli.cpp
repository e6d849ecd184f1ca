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


#include "mockdiff/cli.hpp"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mockdiff/inject.hpp"
#include "mockdiff/report.hpp"
#include "test_util.hpp"

namespace mockdiff {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_pair(const CorpusScreen& cs, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream(dir / "mockup.spec") << cs.mockup_spec();
  std::ofstream(dir / "impl.xml") << cs.impl_dump();
  save_png(cs.mockup_png, dir / "mockup.png");
  save_png(cs.impl_png, dir / "impl.png");
}

std::string fmt_region(const BoundingBox& b) {
  return std::to_string(b.x) + "," + std::to_string(b.y) + "," + std::to_string(b.w) + "," +
         std::to_string(b.h);
}

std::vector<std::string> check_args(const fs::path& pair, const fs::path& out) {
  return {"check",      "--mockup",   (pair / "mockup.spec").string(),
          "--mockup-png", (pair / "mockup.png").string(),
          "--impl",     (pair / "impl.xml").string(),
          "--impl-png", (pair / "impl.png").string(),
          "--out",      out.string()};
}

TEST(Cli, CleanPairExitsZero) {
  const auto dir = testing::fresh_dir("cli_clean");
  write_pair(generate_screen(11), dir / "pair");
  const auto r = run(check_args(dir / "pair", dir / "out"));
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("0 violation(s)"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "out" / "index.html"));
  EXPECT_TRUE(read_report(dir / "out" / "report.json").violations.empty());
}

TEST(Cli, ViolationExitsTwoAndExclusionSilencesIt) {
  const auto dir = testing::fresh_dir("cli_dv");
  CorpusScreen cs = generate_screen(12);
  std::string gc;
  for (const auto& l : cs.leaves) {
    if (l.kind == LeafKind::kIcon) gc = l.name;
  }
  inject_image(cs, gc, 3);
  write_pair(cs, dir / "pair");
  const auto r = run(check_args(dir / "pair", dir / "out"));
  ASSERT_EQ(r.code, kExitViolations) << r.err;
  EXPECT_NE(r.out.find("IncorrectImage"), std::string::npos);

  const auto report = read_report(dir / "out" / "report.json");
  ASSERT_FALSE(report.violations.empty());
  auto args = check_args(dir / "pair", dir / "out2");
  for (const auto& v : report.violations) {
    const auto b = v.anchor_box();
    args.push_back("--exclude");
    args.push_back(fmt_region(b));
  }
  const auto quiet = run(args);
  EXPECT_EQ(quiet.code, kExitOk) << quiet.out << quiet.err;
}

TEST(Cli, PinnedTimestampMakesReportsIdempotent) {
  const auto dir = testing::fresh_dir("cli_pin");
  CorpusScreen cs = generate_screen(13);
  inject_font_color(cs, [&] {
    for (const auto& l : cs.leaves) {
      if (l.kind == LeafKind::kText) return l.name;
    }
    return std::string();
  }());
  write_pair(cs, dir / "pair");
  auto a = check_args(dir / "pair", dir / "a");
  auto b = check_args(dir / "pair", dir / "b");
  for (auto* v : {&a, &b}) {
    v->push_back("--pin-timestamp");
    v->push_back("2026-02-03T04:05:06Z");
  }
  EXPECT_EQ(run(a).code, kExitViolations);
  EXPECT_EQ(run(b).code, kExitViolations);
  EXPECT_EQ(slurp(dir / "a" / "report.json"), slurp(dir / "b" / "report.json"));
  EXPECT_EQ(slurp(dir / "a" / "index.html"), slurp(dir / "b" / "index.html"));
  const auto doc = nlohmann::json::parse(slurp(dir / "a" / "report.json"));
  EXPECT_EQ(doc["generated_at"], "2026-02-03T04:05:06Z");
}

TEST(Cli, ThresholdFlagsAndConfigFile) {
  const auto dir = testing::fresh_dir("cli_cfg");
  write_pair(generate_screen(14), dir / "pair");
  std::ofstream(dir / "bad.cfg") << "lt = many\n";
  auto args = check_args(dir / "pair", dir / "out");
  args.insert(args.end(), {"--config", (dir / "bad.cfg").string()});
  EXPECT_EQ(run(args).code, kExitUsage);

  std::ofstream(dir / "good.cfg") << "lt = 5\n";
  args = check_args(dir / "pair", dir / "out");
  args.insert(args.end(), {"--config", (dir / "good.cfg").string(), "--lt", "8"});
  EXPECT_EQ(run(args).code, kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  EXPECT_DOUBLE_EQ(doc["config"]["lt"].get<double>(), 8.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"check", "--out", "/tmp/x"}).code, kExitUsage);
  EXPECT_EQ(run({"check", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"check", "--mockup", "/no/such.spec", "--mockup-png", "/no/a.png",
                 "--impl", "/no/b.xml", "--impl-png", "/no/b.png", "--out", "/tmp/x"})
                .code,
            kExitUsage);
  EXPECT_EQ(run({"check", "--lt", "abc", "--out", "/tmp/x"}).code, kExitUsage);
  EXPECT_EQ(run({"inject", "--screens", "0", "--violations", "1", "--out", "/tmp/x"}).code,
            kExitUsage);
  EXPECT_EQ(run({"inject", "--violations", "1", "--out", "/tmp/x"}).code, kExitUsage);
  EXPECT_EQ(run({"eval", "--corpus", "/no/such"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, MalformedInputIsAnError) {
  const auto dir = testing::fresh_dir("cli_bad");
  write_pair(generate_screen(15), dir / "pair");
  std::ofstream(dir / "pair" / "impl.xml") << "<hierarchy><node bounds=";
  const auto r = run(check_args(dir / "pair", dir / "out"));
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, InjectBatchCheckAndEval) {
  const auto dir = testing::fresh_dir("cli_corpus");
  const auto corpus = (dir / "corpus").string();
  const auto reports = (dir / "reports").string();
  auto r = run({"inject", "--screens", "3", "--violations", "5", "--seed", "4", "--out",
                corpus});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("wrote 3 screens with 5 injected violations"), std::string::npos);
  EXPECT_EQ(read_manifest(dir / "corpus" / "manifest.json").size(), 5u);

  r = run({"check", "--batch", corpus, "--out", reports, "--pin-timestamp", "x"});
  EXPECT_EQ(r.code, kExitViolations) << r.err;
  for (const char* s : {"s000", "s001", "s002"}) {
    EXPECT_TRUE(fs::exists(dir / "reports" / s / "report.json")) << s;
  }

  r = run({"eval", "--corpus", corpus, "--reports", reports});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("overall"), std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(dir / "reports" / "eval_summary.json"));
  EXPECT_EQ(summary["overall"]["tp"].get<int>() + summary["overall"]["fn"].get<int>(), 5);

  // A missing report is an evaluation error.
  fs::remove_all(dir / "reports" / "s001");
  EXPECT_EQ(run({"eval", "--corpus", corpus, "--reports", reports}).code, kExitError);

  EXPECT_EQ(run({"inject", "--screens", "2", "--violations", "7", "--out",
                 (dir / "bad").string()})
                .code,
            kExitError);
}

}  // namespace
}  // namespace mockdiff
