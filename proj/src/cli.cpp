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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mockdiff/config.hpp"
#include "mockdiff/detect.hpp"
#include "mockdiff/error.hpp"
#include "mockdiff/eval.hpp"
#include "mockdiff/ingest.hpp"
#include "mockdiff/inject.hpp"
#include "mockdiff/report.hpp"
#include "parallel.hpp"

namespace mockdiff {

namespace fs = std::filesystem;

namespace {

// Each pair holds an 8-level pyramid per side; bound the memory.
constexpr std::size_t kBatchWorkers = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckArgs {
  std::string mockup, mockup_png, impl, impl_png, out, config, src, batch;
  std::vector<std::string> exclude;
  double mt = 0, dt = 0, lt = 0, ct = 0, idt = 0;
  std::string timestamp;
  CLI::Option* mt_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* lt_opt = nullptr;
  CLI::Option* ct_opt = nullptr;
  CLI::Option* idt_opt = nullptr;
  CLI::Option* timestamp_opt = nullptr;
};

struct InjectArgs {
  int screens = 0;
  int violations = 0;
  std::uint64_t seed = 0;
  std::string out;
  CLI::Option* screens_opt = nullptr;
  CLI::Option* violations_opt = nullptr;
};

struct EvalArgs {
  std::string corpus, reports;
  bool category_level = false;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

void require_file(const std::string& path, const char* flag) {
  require(path, flag);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw UsageError(fmt::format("{}: no such file {}", flag, path));
  }
}

void require_dir(const std::string& path, const char* flag) {
  require(path, flag);
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw UsageError(fmt::format("{}: no such directory {}", flag, path));
  }
}

AnalysisConfig check_config(const CheckArgs& a) {
  ConfigOverrides o;
  if (a.mt_opt->count()) o.mt = a.mt;
  if (a.dt_opt->count()) o.dt = a.dt;
  if (a.lt_opt->count()) o.lt = a.lt;
  if (a.ct_opt->count()) o.ct = a.ct;
  if (a.idt_opt->count()) o.idt = a.idt;
  for (const auto& r : a.exclude) o.exclude.push_back(parse_region(r));
  std::optional<fs::path> file;
  if (!a.config.empty()) {
    require_file(a.config, "--config");
    file = a.config;
  }
  return load_config(file, o);
}

struct PairPaths {
  fs::path mockup, mockup_png, impl, impl_png;
};

struct PairOutcome {
  std::string screen;
  std::vector<DesignViolation> violations;
  std::string error;
};

PairOutcome run_pair(const PairPaths& p, const std::string& screen,
                     const fs::path& out_dir, const AnalysisConfig& config,
                     const CheckArgs& a) {
  PairOutcome outcome;
  outcome.screen = screen;
  const Screen impl = parse_impl({p.impl, p.impl_png});
  const Screen mockup = parse_mockup({p.mockup, p.mockup_png},
                                     CanvasSize{impl.width(), impl.height()});
  auto result = analyze_detailed(mockup, impl, config);
  ReportOptions opts;
  opts.screen = screen;
  opts.config = config;
  if (!a.src.empty()) opts.src_dir = a.src;
  if (a.timestamp_opt->count()) opts.timestamp = a.timestamp;
  render_report(mockup, impl, result.violations, result.diff, opts, out_dir);
  outcome.violations = std::move(result.violations);
  return outcome;
}

void print_outcome(const PairOutcome& o, const fs::path& out_dir,
                   std::ostream& out) {
  out << fmt::format("{}: {} violation(s), report {}\n", o.screen,
                     o.violations.size(), (out_dir / "index.html").string());
  for (const auto& v : o.violations) {
    out << fmt::format("  [{}/{}] {}\n", to_string(v.category()),
                       to_string(v.subtype()), v.description());
  }
}

std::string screen_name(const fs::path& dump) {
  const auto parent = fs::absolute(dump).parent_path().filename().string();
  return parent.empty() ? dump.stem().string() : parent;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  const AnalysisConfig config = check_config(a);
  if (!a.src.empty()) require_dir(a.src, "--src");
  require(a.out, "--out");

  if (!a.batch.empty()) {
    require_dir(a.batch, "--batch");
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(a.batch)) {
      if (entry.is_directory() && fs::exists(entry.path() / "mockup.spec")) {
        names.push_back(entry.path().filename().string());
      }
    }
    std::sort(names.begin(), names.end());
    std::vector<PairOutcome> outcomes(names.size());
    internal::parallel_for(
        names.size(),
        [&](std::size_t i) {
          const fs::path dir = fs::path(a.batch) / names[i];
          try {
            outcomes[i] = run_pair({dir / "mockup.spec", dir / "mockup.png",
                                    dir / "impl.xml", dir / "impl.png"},
                                   names[i], fs::path(a.out) / names[i],
                                   config, a);
          } catch (const std::exception& e) {
            outcomes[i].screen = names[i];
            outcomes[i].error = e.what();
          }
        },
        kBatchWorkers);
    bool any_error = false;
    bool any_violation = false;
    for (const auto& o : outcomes) {
      if (!o.error.empty()) {
        err << fmt::format("{}: error: {}\n", o.screen, o.error);
        any_error = true;
        continue;
      }
      print_outcome(o, fs::path(a.out) / o.screen, out);
      any_violation = any_violation || !o.violations.empty();
    }
    if (any_error) return kExitError;
    return any_violation ? kExitViolations : kExitOk;
  }

  require_file(a.mockup, "--mockup");
  require_file(a.mockup_png, "--mockup-png");
  require_file(a.impl, "--impl");
  require_file(a.impl_png, "--impl-png");
  const auto outcome =
      run_pair({a.mockup, a.mockup_png, a.impl, a.impl_png},
               screen_name(a.impl), a.out, config, a);
  print_outcome(outcome, a.out, out);
  return outcome.violations.empty() ? kExitOk : kExitViolations;
}

int cmd_inject(const InjectArgs& a, std::ostream& out) {
  if (!a.screens_opt->count()) throw UsageError("--screens is required");
  if (!a.violations_opt->count()) throw UsageError("--violations is required");
  require(a.out, "--out");
  const Corpus corpus = build_corpus(a.screens, a.violations, a.seed);
  write_corpus(corpus, a.out);
  std::map<Subtype, int> counts;
  for (const auto& e : corpus.manifest) ++counts[e.record.subtype];
  out << fmt::format("wrote {} screens with {} injected violations to {}\n",
                     corpus.screens.size(), corpus.manifest.size(), a.out);
  for (const auto& [s, n] : counts) {
    out << fmt::format("  {:<22}{:>4}\n", to_string(s), n);
  }
  return kExitOk;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  require_dir(a.corpus, "--corpus");
  require_dir(a.reports, "--reports");
  const auto manifest = read_manifest(fs::path(a.corpus) / "manifest.json");

  EvalOptions opts;
  opts.category_level = a.category_level;
  for (const auto& entry : fs::directory_iterator(a.corpus)) {
    if (entry.is_directory() && fs::exists(entry.path() / "mockup.spec")) {
      opts.screens.insert(entry.path().filename().string());
    }
  }
  std::set<std::string> expected = opts.screens;
  for (const auto& e : manifest) expected.insert(e.screen_id);

  std::vector<ScreenReport> reports;
  std::set<std::string> seen;
  for (const auto& entry : fs::directory_iterator(a.reports)) {
    const auto file = entry.path() / "report.json";
    if (!entry.is_directory() || !fs::exists(file)) continue;
    reports.push_back(read_report(file));
    seen.insert(reports.back().screen);
  }
  std::sort(reports.begin(), reports.end(),
            [](const auto& x, const auto& y) { return x.screen < y.screen; });
  for (const auto& s : expected) {
    if (!seen.count(s)) {
      throw Error(ErrorCode::kEvalError, "no report for screen " + s);
    }
  }
  const auto scores = score(reports, manifest, opts);
  const auto table = summary_table(scores);
  write_text(fs::path(a.reports) / "eval_summary.txt", table);
  write_text(fs::path(a.reports) / "eval_summary.json",
             to_json(scores).dump(2) + "\n");
  out << table;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Detects design violations between a GUI mock-up and its "
               "implementation."};
  app.name("mockdiff");
  app.require_subcommand(1);

  CheckArgs c;
  auto* check = app.add_subcommand("check", "Compare a mock-up with an implementation screen");
  check->add_option("--mockup", c.mockup, "Mock-up spec (JSON)");
  check->add_option("--mockup-png", c.mockup_png, "Mock-up screenshot");
  check->add_option("--impl", c.impl, "Implementation hierarchy dump (XML)");
  check->add_option("--impl-png", c.impl_png, "Implementation screenshot");
  check->add_option("--out", c.out, "Report output directory");
  check->add_option("--config", c.config, "key=value configuration file");
  check->add_option("--src", c.src, "App source root for layout links");
  check->add_option("--exclude", c.exclude, "Dynamic region x,y,w,h (repeatable)");
  check->add_option("--batch", c.batch, "Directory of screen-pair directories");
  c.mt_opt = check->add_option("--mt", c.mt, "GC-matching threshold (px)");
  c.dt_opt = check->add_option("--dt", c.dt, "Difference density threshold");
  c.lt_opt = check->add_option("--lt", c.lt, "Layout threshold (px)");
  c.ct_opt = check->add_option("--ct", c.ct, "Color similarity threshold");
  c.idt_opt = check->add_option("--idt", c.idt, "Image difference threshold");
  c.timestamp_opt = check->add_option("--pin-timestamp", c.timestamp,
                                      "Fixed generated_at value");

  InjectArgs i;
  auto* inj = app.add_subcommand("inject", "Build a synthetic corpus with injected violations");
  i.screens_opt = inj->add_option("--screens", i.screens, "Number of screens")
                      ->check(CLI::PositiveNumber);
  i.violations_opt =
      inj->add_option("--violations", i.violations, "Number of violations")
          ->check(CLI::PositiveNumber);
  inj->add_option("--seed", i.seed, "Random seed");
  inj->add_option("--out", i.out, "Corpus output directory");

  EvalArgs e;
  auto* ev = app.add_subcommand("eval", "Score reports against a corpus manifest");
  ev->add_option("--corpus", e.corpus, "Corpus directory");
  ev->add_option("--reports", e.reports, "Directory of per-screen reports");
  ev->add_flag("--category-level", e.category_level,
               "Score classification by category only");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(c, out, err);
    if (*inj) return cmd_inject(i, out);
    return cmd_eval(e, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return ex.code() == ErrorCode::kConfigError ? kExitUsage : kExitError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mockdiff
