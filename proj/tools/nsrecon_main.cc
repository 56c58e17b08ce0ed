// Copyright 2026 The nsrecon Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: run, sweep, check-bounds, gen-signal.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nsrecon/config.h"
#include "nsrecon/errors.h"
#include "nsrecon/generator.h"
#include "nsrecon/pipeline.h"
#include "nsrecon/signal.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFrameFailure = 3;

// Flag name -> config key, for every key that takes a single value.
const std::vector<std::pair<std::string, std::string>> kValueFlags = {
    {"--m", "m"},
    {"--p", "p"},
    {"--beta", "beta"},
    {"--levels", "levels"},
    {"--delta", "delta"},
    {"--seed", "seed"},
    {"--trials", "trials"},
    {"--lambda", "lambda"},
    {"--eps", "eps"},
    {"--R", "R"},
    {"--r", "r"},
    {"--order", "order"},
    {"--signal-kind", "signal_kind"},
    {"--signal-seed", "signal_seed"},
    {"--k-range", "k_range"},
    {"--target-sup", "target_sup"},
    {"--eval-points", "eval_points"},
    {"--m-list", "m_list"},
    {"--gamma", "gamma"},
    {"--t", "t"},
};

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> schemes;
  bool unquantized = false;
  unsigned threads = 0;
  std::map<std::string, std::string> values;
};

void AddCommonOptions(CLI::App* app, CommonOptions& o, bool multi_scheme) {
  app->add_option("--config", o.config_path, "key = value config file");
  app->add_option("--out", o.out_dir, "output directory");
  auto* scheme = app->add_option(
      "--scheme", o.schemes,
      multi_scheme ? "msq, sigma-delta, beta (repeat or comma-separate)"
                   : "msq, sigma-delta or beta");
  if (multi_scheme) {
    scheme->delimiter(',');
  } else {
    scheme->expected(1);
  }
  app->add_flag("--unquantized", o.unquantized,
                "skip quantization (q = y) but keep the scheme's frame");
  for (const auto& [flag, key] : kValueFlags) {
    app->add_option(flag, o.values[key], "config key " + key);
  }
}

nsrecon::ExperimentConfig BuildConfig(const CLI::App* app,
                                      const CommonOptions& o) {
  nsrecon::ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) {
      throw nsrecon::ValidationError("cannot open config file " +
                                     o.config_path);
    }
    nsrecon::ApplyConfigText(cfg, in);
  }
  for (const auto& [flag, key] : kValueFlags) {
    if (app->count(flag) > 0) nsrecon::SetConfigValue(cfg, key, o.values.at(key));
  }
  if (!o.schemes.empty()) cfg.scheme = nsrecon::ParseScheme(o.schemes.front());
  if (o.unquantized) cfg.unquantized = true;
  return cfg;
}

std::filesystem::path OutDir(const CommonOptions& o) {
  std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

nsrecon::Generator MakeGenerator(const nsrecon::ExperimentConfig& cfg) {
  nsrecon::GeneratorParams gp;
  gp.lambda = cfg.lambda;
  return nsrecon::Generator(gp);
}

int RunCommand(const CLI::App* app, const CommonOptions& o) {
  const nsrecon::ExperimentConfig cfg = BuildConfig(app, o);
  nsrecon::Validate(cfg);
  const nsrecon::Generator gen = MakeGenerator(cfg);
  const nsrecon::TestSignal f = nsrecon::TestSignal::FromConfig(cfg, gen);
  const nsrecon::RunReport rep = nsrecon::RunOnce(cfg, gen, f);
  if (o.out_dir.empty()) {
    std::cout << rep.ToText();
  } else {
    const auto path = OutDir(o) / "run_report.txt";
    std::ofstream(path) << rep.ToText();
    std::cerr << "wrote " << path.string() << "\n";
  }
  std::cerr << fmt::format("elapsed {:.3f} s\n", rep.seconds);
  if (rep.failed) {
    std::cerr << "frame failure: " << rep.failure << "\n";
    return kExitFrameFailure;
  }
  return 0;
}

int SweepCommand(const CLI::App* app, const CommonOptions& o) {
  nsrecon::ExperimentConfig cfg = BuildConfig(app, o);
  std::vector<nsrecon::Scheme> schemes;
  for (const std::string& s : o.schemes) {
    schemes.push_back(nsrecon::ParseScheme(s));
  }
  if (schemes.empty()) schemes.push_back(cfg.scheme);
  const nsrecon::Generator gen = MakeGenerator(cfg);
  const nsrecon::SweepTable table =
      nsrecon::Sweep(cfg, schemes, gen, o.threads);
  const auto dir = OutDir(o);
  std::ofstream(dir / "sweep.csv") << [&] {
    std::ostringstream s;
    table.WriteCsv(s);
    return s.str();
  }();
  std::ofstream svg(dir / "sweep.svg");
  table.WriteSvg(svg);
  std::cerr << "wrote " << (dir / "sweep.csv").string() << " and "
            << (dir / "sweep.svg").string() << "\n";
  return 0;
}

int CheckBoundsCommand(const CLI::App* app, const CommonOptions& o) {
  const nsrecon::ExperimentConfig cfg = BuildConfig(app, o);
  const nsrecon::Generator gen = MakeGenerator(cfg);
  bool ok = true;
  for (const nsrecon::BoundLine& line : nsrecon::CheckBounds(cfg, gen)) {
    std::cout << line.ToText() << "\n";
    if (!line.pass && !line.probabilistic) ok = false;
  }
  return ok ? 0 : 1;
}

int GenSignalCommand(const CLI::App* app, const CommonOptions& o) {
  const nsrecon::ExperimentConfig cfg = BuildConfig(app, o);
  const nsrecon::SignalModel f = nsrecon::SynthTestSignal(cfg.signal);
  if (o.out_dir.empty()) {
    f.WriteCsv(std::cout);
  } else {
    const auto path = OutDir(o) / "signal.csv";
    std::ofstream out(path);
    f.WriteCsv(out);
    std::cerr << "wrote " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-shaped random sampling reconstruction experiments"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts, bounds_opts, signal_opts;
  CLI::App* run = app.add_subcommand("run", "single trial, prints a report");
  AddCommonOptions(run, run_opts, false);
  CLI::App* sweep =
      app.add_subcommand("sweep", "mean sup error over m_list, CSV and SVG");
  AddCommonOptions(sweep, sweep_opts, true);
  sweep->add_option("--threads", sweep_opts.threads,
                    "worker threads (0 = hardware concurrency)");
  CLI::App* bounds =
      app.add_subcommand("check-bounds", "pass/fail line per inequality");
  AddCommonOptions(bounds, bounds_opts, false);
  CLI::App* gen_signal =
      app.add_subcommand("gen-signal", "emit the test signal as CSV");
  AddCommonOptions(gen_signal, signal_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (run->parsed()) return RunCommand(run, run_opts);
    if (sweep->parsed()) return SweepCommand(sweep, sweep_opts);
    if (bounds->parsed()) return CheckBoundsCommand(bounds, bounds_opts);
    if (gen_signal->parsed()) return GenSignalCommand(gen_signal, signal_opts);
  } catch (const nsrecon::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nsrecon::FrameFailure& e) {
    std::cerr << "frame failure: " << e.what() << "\n";
    return kExitFrameFailure;
  }
  return 0;
}
