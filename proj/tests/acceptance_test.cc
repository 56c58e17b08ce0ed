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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
//
// usage: acceptance_test PATH_TO_CLI [SCRATCH_DIR]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nsrecon/condense.h"
#include "nsrecon/config.h"
#include "nsrecon/generator.h"
#include "nsrecon/pipeline.h"
#include "nsrecon/quantize.h"
#include "nsrecon/sampling.h"
#include "nsrecon/signal.h"

namespace {

using namespace nsrecon;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Suite {
 public:
  // `extra_seconds` charges shared setup (the generator build) to a
  // criterion's runtime.
  void Run(int id, const std::string& name, double limit_seconds,
           double extra_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count() +
        extra_seconds;
    const bool in_time = secs < limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures_;
    std::cout << fmt::format("{} criterion {}: {}; {}; runtime {:.2f} s (limit "
                             "{:.0f} s{})",
                             pass ? "PASS" : "FAIL", id, name, o.detail, secs,
                             limit_seconds, in_time ? "" : ", exceeded")
              << std::endl;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

Outcome NoiseShaping() {
  struct Case {
    std::string name;
    TransferOperator h;
    MidriseAlphabet a;
  };
  constexpr int kLength = 3000;
  const std::vector<Case> cases = {
      {"sd n=1", TransferOperator::SigmaDelta(1, kLength),
       MidriseAlphabet(2, 0.5)},
      {"sd n=2", TransferOperator::SigmaDelta(2, kLength),
       MidriseAlphabet(4, 0.25)},
      {"sd n=7", TransferOperator::SigmaDelta(7, kLength),
       MidriseAlphabet(80, 0.05)},
      {"beta=2", TransferOperator::Beta(2.0, 15, kLength),
       MidriseAlphabet(4, 0.25)},
      {"beta=5", TransferOperator::Beta(5.0, 15, kLength),
       MidriseAlphabet(10, 0.1)},
      {"beta=20", TransferOperator::Beta(20.0, 15, kLength),
       MidriseAlphabet(80, 1.0 / 130.0)},
  };
  std::mt19937_64 engine(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst_residual = 0.0;
  double worst_state_ratio = 0.0;
  bool ok = true;
  for (const Case& c : cases) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> y(kLength);
      for (double& v : y) v = unit(engine);
      double mu = 0.0;
      for (double v : y) mu = std::max(mu, std::abs(v));
      const QuantizationResult r = GreedyNoiseShape(y, c.h, c.a);
      const std::vector<double> hu = c.h.Apply(r.u);
      for (int i = 0; i < kLength; ++i) {
        worst_residual =
            std::max(worst_residual, std::abs((y[i] - r.q[i]) - hu[i]));
      }
      if (StabilityMargin(c.h, mu, c.a) >= 0.0) {
        worst_state_ratio =
            std::max(worst_state_ratio, r.max_state / c.a.delta());
        if (!(r.max_state <= c.a.delta())) ok = false;
      }
    }
  }
  ok = ok && worst_residual < 1e-12;
  return {ok, fmt::format("6 operators x 200 inputs, worst ||(y-q)-Hu||_inf = "
                          "{:.3e} (< 1e-12), worst ||u||_inf / delta = {:.6f} "
                          "(<= 1)",
                          worst_residual, worst_state_ratio)};
}

Outcome RoundTrip(const Generator& gen) {
  std::string detail;
  bool ok = true;
  for (Scheme s : {Scheme::kBeta, Scheme::kSigmaDelta}) {
    int good = 0, failed = 0;
    double worst = 0.0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      ExperimentConfig cfg;
      cfg.scheme = s;
      cfg.seed = seed;
      cfg.unquantized = true;
      cfg.signal_kind = SignalKind::kInSpace;
      const TestSignal f = TestSignal::FromConfig(cfg, gen);
      const RunReport r = RunOnce(cfg, gen, f);
      if (r.failed) {
        ++failed;
        continue;
      }
      worst = std::max(worst, r.sup_error);
      if (r.sup_error < 1e-8) ++good;
    }
    ok = ok && good >= 4;
    detail += fmt::format("{}{}: {}/5 seeds below 1e-8 (worst {:.3e}, {} "
                          "frame failures)",
                          detail.empty() ? "" : ", ", SchemeName(s), good,
                          worst, failed);
  }
  return {ok, detail};
}

Outcome OperatorNorms() {
  const CondensationBoundReport sd = VerifySigmaDeltaBound(7, 15, 200);
  const CondensationBoundReport b5 = VerifyBetaBound(5.0, 15, 200);
  const CondensationBoundReport b20 = VerifyBetaBound(20.0, 15, 200);
  const CondensationBoundReport small = VerifyBetaBound(2.0, 3, 1);
  const bool small_exact = std::abs(small.lhs - 1.0 / 7.0) < 1e-15;
  const bool ok = sd.pass() && b5.pass() && b20.pass() && small.pass() &&
                  small_exact && small.rhs == 0.25;
  return {ok,
          fmt::format("sigma-delta n=7: {:.4e} <= {:.4e}; beta=5: {:.4e} <= "
                      "{:.4e}; beta=20: {:.4e} <= {:.4e}; beta=2 m/p=3 p=1: "
                      "{:.16f} <= {}",
                      sd.lhs, sd.rhs, b5.lhs, b5.rhs, b20.lhs, b20.rhs,
                      small.lhs, small.rhs)};
}

Outcome GeneratorValidity(const Generator& gen) {
  const double defect = OrthonormalityDefect(gen, 20);
  const KernelContext ctx(gen, 5.0, 0.5);
  double diag = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -20.0 + 40.0 * i / 9999.0;
    diag = std::max(diag, ctx.Kernel(x, x));
  }
  int holds = 0;
  double worst_ratio = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SignalSpec spec;
    spec.seed = seed;
    const SignalModel f = SynthTestSignal(spec);
    const CoefficientVector pf = Project(f, gen, 5.0, 0.5);
    bool all = true;
    for (double r1 : {5.0, 7.5}) {
      const ProjectionErrorReport r =
          MeasureProjectionError(f, pf, gen, 5.0, 0.5, r1, 11);
      worst_ratio = std::max(worst_ratio, r.measured / r.bound);
      all = all && r.holds();
    }
    if (all) ++holds;
  }
  const bool ok = defect < 1e-6 && diag <= 3.0 * (1.0 + 1e-6) && holds == 10;
  return {ok, fmt::format("orthonormality defect |k|<=20 = {:.3e} (< 1e-6), "
                          "sup K(x,x) = {:.6f} (<= 3.000003), projection bound "
                          "holds on {}/10 signals with C_11 = {:.4e} (worst "
                          "measured/bound {:.3e})",
                          defect, diag, holds, gen.decay_constant(11),
                          worst_ratio)};
}

Outcome FigureBehaviour(const Generator& gen) {
  ExperimentConfig cfg;
  cfg.m_list = {500, 3000};
  cfg.trials = 5;
  cfg.p = 200;
  const SweepTable t = Sweep(cfg, {Scheme::kMsq, Scheme::kBeta}, gen);
  auto mean = [&](Scheme s, int m) {
    for (const SweepRow& r : t.rows) {
      if (r.scheme == s && r.m == m) return r.mean_sup_error;
    }
    return std::nan("");
  };
  int failures = 0;
  for (const SweepRow& r : t.rows) failures += r.failures;
  const double msq500 = mean(Scheme::kMsq, 500);
  const double msq3000 = mean(Scheme::kMsq, 3000);
  const double b500 = mean(Scheme::kBeta, 500);
  const double b3000 = mean(Scheme::kBeta, 3000);
  const double ratio = std::max(msq500, msq3000) / std::min(msq500, msq3000);
  const bool a = b3000 < msq3000;
  const bool b = ratio < 2.0;
  const bool c = b3000 < b500;
  return {a && b && c,
          fmt::format("(a) beta {:.3e} < msq {:.3e} at m=3000 {}; (b) msq "
                      "m=500 {:.3e} vs m=3000 {:.3e}, ratio {:.3f} < 2 {}; (c) "
                      "beta m=3000 {:.3e} < m=500 {:.3e} {}; {} frame failures",
                      b3000, msq3000, a ? "ok" : "no", msq500, msq3000, ratio,
                      b ? "ok" : "no", b3000, b500, c ? "ok" : "no",
                      failures)};
}

Outcome BinConcentration() {
  int within = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const SampleConfig cfg{10000, 100, 5.0, 0.5, seed};
    const BinnedSamples b = PartitionBins(DrawSamples(cfg), cfg);
    if (std::abs(b.raw_counts[0] - 0.6 * cfg.m) <= 0.3 * cfg.m) ++within;
  }
  return {within >= 49,
          fmt::format("|m1 - 0.6 m| <= 0.3 m in {}/50 seeds (need 49)", within)};
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome SweepDeterminism(const std::string& cli,
                         const std::filesystem::path& scratch) {
  const std::filesystem::path cfg_path = scratch / "determinism.ini";
  std::ofstream(cfg_path) << "[sweep]\nm_list = 600, 1200\ntrials = 2\n"
                             "seed = 3\n";
  std::vector<std::string> csv;
  for (const char* run : {"a", "b"}) {
    const std::filesystem::path out = scratch / run;
    std::filesystem::remove_all(out);
    const std::string cmd = fmt::format(
        "\"{}\" sweep --config \"{}\" --scheme msq,beta,sigma-delta --out "
        "\"{}\" 2>/dev/null",
        cli, cfg_path.string(), out.string());
    if (std::system(cmd.c_str()) != 0) {
      return {false, "sweep command failed: " + cmd};
    }
    csv.push_back(ReadFile(out / "sweep.csv"));
  }
  const bool same = csv[0] == csv[1] && !csv[0].empty();
  const auto rows = std::count(csv[0].begin(), csv[0].end(), '\n');
  return {same, fmt::format("two CLI sweeps, {} CSV lines, {} bytes, {}", rows,
                            csv[0].size(),
                            same ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_test PATH_TO_CLI [SCRATCH_DIR]\n";
    return 64;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch =
      argc > 2 ? std::filesystem::path(argv[2])
               : std::filesystem::temp_directory_path() / "nsrecon_acceptance";
  std::filesystem::create_directories(scratch);

  const auto start = std::chrono::steady_clock::now();
  const Generator gen{GeneratorParams{}};
  const double build =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::cout << fmt::format("generator build: {:.2f} s", build) << std::endl;

  Suite suite;
  suite.Run(1, "noise-shaping identity and stability", 10.0, 0.0,
            NoiseShaping);
  suite.Run(2, "exact round trip on the approximation space", 60.0, build,
            [&] { return RoundTrip(gen); });
  suite.Run(3, "condensation operator-norm bounds", 5.0, 0.0, OperatorNorms);
  suite.Run(4, "generator validity", 60.0, build,
            [&] { return GeneratorValidity(gen); });
  suite.Run(5, "qualitative scheme comparison", 600.0, build,
            [&] { return FigureBehaviour(gen); });
  suite.Run(6, "inner-bin count concentration", 5.0, 0.0, BinConcentration);
  suite.Run(7, "sweep determinism", 600.0, 0.0,
            [&] { return SweepDeterminism(cli, scratch); });
  std::cout << fmt::format("{} of 7 criteria failed", suite.failures())
            << std::endl;
  return suite.failures();
}
