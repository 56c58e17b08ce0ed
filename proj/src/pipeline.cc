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

#include "nsrecon/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "nsrecon/condense.h"
#include "nsrecon/errors.h"
#include "nsrecon/frame.h"
#include "nsrecon/quadrature.h"
#include "nsrecon/quantize.h"
#include "nsrecon/rng.h"
#include "nsrecon/sampling.h"

namespace nsrecon {
namespace {

constexpr int kInSpaceSupPoints = 10000;
constexpr int kKernelGridPoints = 10000;
constexpr int kKernelPairs = 100;
constexpr int kKernelTailPoints = 10;

std::string Real(double v) { return fmt::format("{:.9e}", v); }

}  // namespace

TestSignal::TestSignal(SignalModel model)
    : kind_(SignalKind::kSincTrain), model_(std::move(model)) {}

TestSignal::TestSignal(CoefficientVector coeffs, const Generator& gen)
    : kind_(SignalKind::kInSpace), coeffs_(std::move(coeffs)), gen_(&gen) {}

TestSignal TestSignal::FromConfig(const ExperimentConfig& cfg,
                                  const Generator& gen) {
  if (cfg.signal_kind == SignalKind::kInSpace) {
    return TestSignal(SynthInSpaceSignal(cfg.signal, gen, cfg.R, cfg.eps),
                      gen);
  }
  return TestSignal(SynthTestSignal(cfg.signal));
}

double TestSignal::operator()(double t) const {
  if (kind_ == SignalKind::kInSpace) return Evaluate(coeffs_, *gen_, t);
  return model_(t);
}

CoefficientVector SynthInSpaceSignal(const SignalSpec& spec,
                                     const Generator& gen, double R,
                                     double eps) {
  CoefficientVector c;
  c.max_index = ApproximationIndexBound(gen.lambda(), R, eps);
  Rng rng(spec.seed, Stream::kSignal);
  c.values.resize(static_cast<size_t>(2 * c.max_index + 1));
  for (double& v : c.values) v = rng.Uniform(-1.0, 1.0);
  const double half = (1.0 + 3.0 * eps) * R;
  double sup = 0.0;
  for (int i = 0; i < kInSpaceSupPoints; ++i) {
    const double t = -half + 2.0 * half * i / (kInSpaceSupPoints - 1);
    sup = std::max(sup, std::abs(Evaluate(c, gen, t)));
  }
  const double scale =
      sup > 0.0 ? spec.target_sup / (sup * kSupSafetyDivisor) : 0.0;
  for (double& v : c.values) v *= scale;
  return c;
}

std::string RunReport::ToText() const {
  return fmt::format(
      "scheme = {}\nm = {}\np = {}\nseed = {}\nstatus = {}\nfailure = {}\n"
      "sup_error = {}\nl2_error = {}\nlambda_min = {}\nlambda_max = {}\n"
      "max_state = {}\nsamples_used = {}\nmeasurements = {}\ndiscarded = {}\n",
      scheme, m, p, seed, failed ? "frame-failure" : "ok", failure,
      Real(sup_error), Real(l2_error), Real(lambda_min), Real(lambda_max),
      Real(max_state), samples_used, measurements, discarded);
}

RunReport RunOnce(const ExperimentConfig& cfg, const Generator& gen,
                  const TestSignal& f) {
  const auto start = std::chrono::steady_clock::now();
  Validate(cfg);
  if (std::abs(gen.lambda() - cfg.lambda) > 0.0) {
    throw ValidationError(fmt::format(
        "generator was built for lambda = {}, config asks for {}",
        gen.lambda(), cfg.lambda));
  }
  RunReport rep;
  rep.scheme = SchemeName(cfg.scheme);
  rep.m = cfg.m;
  rep.p = cfg.scheme == Scheme::kMsq ? cfg.m : cfg.p;
  rep.seed = cfg.seed;

  const KernelContext ctx(gen, cfg.R, cfg.eps);
  try {
    SampleConfig sc{cfg.m, rep.p, cfg.R, cfg.eps, cfg.seed};
    std::vector<double> coords;
    std::vector<double> signs;
    std::optional<BlockCondensation> v;
    std::optional<WeightMatrix> w;
    if (cfg.scheme == Scheme::kMsq) {
      coords = DrawSamples(sc);
      v.emplace(NuIdentity(), cfg.m);
      w = WeightMatrix::Identity(cfg.m);
    } else {
      const BinnedSamples bins = DrawBinnedSamples(sc);
      coords = bins.Coordinates();
      signs = bins.ConcatenatedSigns();
      rep.discarded = bins.discarded;
      const CondensationVector nu =
          cfg.scheme == Scheme::kSigmaDelta
              ? NuSigmaDelta(cfg.order, bins.block_length)
              : NuBeta(cfg.beta_value(), bins.block_length);
      v.emplace(nu, bins.blocks());
      w = WeightMatrix::FromBlocks(bins.block_counts, cfg.R, cfg.eps);
    }
    rep.samples_used = static_cast<int>(coords.size());
    rep.measurements = v->rows();

    std::vector<double> y(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) {
      y[i] = f(coords[i]);
      if (!signs.empty()) y[i] *= signs[i];
    }

    std::vector<double> q;
    if (cfg.unquantized) {
      q = y;
    } else if (cfg.scheme == Scheme::kMsq) {
      q = Msq(y, MsqAlphabet(cfg.levels_value()));
      for (size_t i = 0; i < y.size(); ++i) {
        rep.max_state = std::max(rep.max_state, std::abs(y[i] - q[i]));
      }
    } else {
      const int n = static_cast<int>(y.size());
      const TransferOperator h =
          cfg.scheme == Scheme::kSigmaDelta
              ? TransferOperator::SigmaDelta(cfg.order, n)
              : TransferOperator::Beta(cfg.beta_value(), v->block_length(), n);
      const MidriseAlphabet alphabet(cfg.levels_value(), cfg.delta_value());
      QuantizationResult qr = GreedyNoiseShape(y, h, alphabet);
      q = std::move(qr.q);
      rep.max_state = qr.max_state;
    }

    const Eigen::MatrixXd g = BuildSampleMatrix(coords, ctx);
    const FrameSystem fs = AssembleFrame(g, *w, *v, signs);
    rep.lambda_min = fs.lambda_min;
    rep.lambda_max = fs.lambda_max;
    const CoefficientVector c = Reconstruct(fs, *w, *v, q);

    for (int i = 0; i < cfg.eval_points; ++i) {
      const double t = -cfg.R + 2.0 * cfg.R * i / (cfg.eval_points - 1);
      rep.sup_error =
          std::max(rep.sup_error, std::abs(f(t) - Evaluate(c, gen, t)));
    }
    const double sq = Simpson(
        [&](double t) {
          const double e = f(t) - Evaluate(c, gen, t);
          return e * e;
        },
        -cfg.R, cfg.R, kL2SimpsonNodes);
    rep.l2_error = std::sqrt(std::max(sq, 0.0));
  } catch (const FrameFailure& e) {
    rep.failed = true;
    rep.failure = e.what();
    rep.lambda_min = e.lambda_min();
  }
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

void SweepTable::WriteCsv(std::ostream& out) const {
  out << "scheme,m,p,mean_sup_error,failures\n";
  for (const SweepRow& r : rows) {
    out << fmt::format("{},{},{},{},{}\n", SchemeName(r.scheme), r.m, r.p,
                       std::isnan(r.mean_sup_error) ? std::string("nan")
                                                    : Real(r.mean_sup_error),
                       r.failures);
  }
}

SweepTable Sweep(const ExperimentConfig& cfg,
                 const std::vector<Scheme>& schemes, const Generator& gen,
                 unsigned threads) {
  struct Job {
    size_t row;
    ExperimentConfig cfg;
  };
  SweepTable table;
  std::vector<Job> jobs;
  for (Scheme s : schemes) {
    for (int m : cfg.m_list) {
      ExperimentConfig c = cfg;
      c.scheme = s;
      c.m = m;
      c.p = EffectiveBlockCount(c, m);
      SweepRow row{s, m, c.p, std::numeric_limits<double>::quiet_NaN(), 0};
      if (c.p == 0) {
        throw ValidationError(fmt::format(
            "no block count p <= {} fits m = {} for scheme {}", cfg.p, m,
            SchemeName(s)));
      }
      Validate(c);
      for (int t = 0; t < cfg.trials; ++t) {
        ExperimentConfig ct = c;
        ct.seed = cfg.seed + static_cast<uint64_t>(t);
        jobs.push_back({table.rows.size(), ct});
      }
      table.rows.push_back(row);
    }
  }

  const TestSignal f = TestSignal::FromConfig(cfg, gen);
  std::vector<RunReport> results(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      results[i] = RunOnce(jobs[i].cfg, gen, f);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::vector<double> sums(table.rows.size(), 0.0);
  std::vector<int> oks(table.rows.size(), 0);
  for (size_t i = 0; i < jobs.size(); ++i) {
    const size_t r = jobs[i].row;
    if (results[i].failed) {
      ++table.rows[r].failures;
    } else {
      sums[r] += results[i].sup_error;
      ++oks[r];
    }
  }
  for (size_t r = 0; r < table.rows.size(); ++r) {
    if (oks[r] > 0) table.rows[r].mean_sup_error = sums[r] / oks[r];
  }
  return table;
}

std::string BoundLine::ToText() const {
  return fmt::format("{} {}: lhs = {} rhs = {}{}", pass ? "PASS" : "FAIL",
                     name, Real(lhs), Real(rhs),
                     probabilistic ? " (probabilistic)" : "");
}

std::vector<BoundLine> CheckBounds(const ExperimentConfig& cfg,
                                   const Generator& gen) {
  Validate(cfg);
  std::vector<BoundLine> lines;
  auto add = [&](std::string name, double lhs, double rhs, bool prob) {
    lines.push_back({std::move(name), lhs, rhs, lhs <= rhs, prob});
  };
  const double lambda = gen.lambda();
  const KernelContext ctx(gen, cfg.R, cfg.eps);
  const double half = (1.0 + 3.0 * cfg.eps) * cfg.R;

  const int shifts =
      2 * static_cast<int>(std::ceil(lambda * gen.params().tail_cut));
  add(fmt::format("generator orthonormality defect over shifts 0..{}", shifts),
      OrthonormalityDefect(gen, shifts), 1e-6, false);

  double diag = 0.0;
  for (int i = 0; i < kKernelGridPoints; ++i) {
    const double x = -half + 2.0 * half * i / (kKernelGridPoints - 1);
    diag = std::max(diag, ctx.Kernel(x, x));
  }
  add("kernel diagonal sup K(x,x) <= 2 lambda - 1", diag,
      (2.0 * lambda - 1.0) * (1.0 + 1e-6), false);

  Rng rng(cfg.seed, Stream::kDiagnostics);
  double decay = 0.0;
  for (int i = 0; i < kKernelPairs; ++i) {
    const double x = rng.Uniform(-half, half);
    const double y = rng.Uniform(-half, half);
    decay = std::max(decay, std::abs(ctx.Kernel(x, y)) /
                                KernelDecayBound(gen, cfg.r, x, y));
  }
  add(fmt::format("kernel off-diagonal decay, r = {} (ratio to bound)", cfg.r),
      decay, 1.0, false);

  const double r2 = (1.0 + 2.0 * cfg.eps) * cfg.R;
  double tail = 0.0;
  for (int i = 0; i < kKernelTailPoints; ++i) {
    const double mag = r2 + (half - r2) * i / (kKernelTailPoints - 1);
    const double x = i % 2 == 0 ? mag : -mag;
    tail = std::max(tail, KernelL2OnInterval(ctx, x, cfg.R));
  }
  add("kernel tail L2 norm on [-R, R] for |x| >= (1 + 2 eps) R", tail,
      KernelTailBound(gen, cfg.r, cfg.R, r2), false);

  if (cfg.signal_kind == SignalKind::kSincTrain) {
    const SignalModel f = SynthTestSignal(cfg.signal);
    const CoefficientVector pf = Project(f, gen, cfg.R, cfg.eps);
    const ProjectionErrorReport pe =
        MeasureProjectionError(f, pf, gen, cfg.R, cfg.eps, cfg.R, cfg.r);
    add("projection L2 error on [-R, R]", pe.measured, pe.bound, false);
  }

  if (cfg.scheme != Scheme::kMsq) {
    const int mp = cfg.block_length();
    const CondensationBoundReport cb =
        cfg.scheme == Scheme::kSigmaDelta
            ? VerifySigmaDeltaBound(cfg.order, mp, cfg.p)
            : VerifyBetaBound(cfg.beta_value(), mp, cfg.p);
    add(cb.label, cb.lhs, cb.rhs, false);

    SampleConfig sc{cfg.m, cfg.p, cfg.R, cfg.eps, cfg.seed};
    try {
      const BinnedSamples bins = DrawBinnedSamples(sc);
      const CondensationVector nu =
          cfg.scheme == Scheme::kSigmaDelta
              ? NuSigmaDelta(cfg.order, mp)
              : NuBeta(cfg.beta_value(), mp);
      const BlockCondensation v(nu, bins.blocks());
      const WeightMatrix w =
          WeightMatrix::FromBlocks(bins.block_counts, cfg.R, cfg.eps);
      const FrameSystem fs =
          AssembleFrame(BuildSampleMatrix(bins.Coordinates(), ctx), w, v,
                        bins.ConcatenatedSigns());
      const FrameBoundReport fb =
          MakeFrameBoundReport(fs, nu, cfg.gamma, cfg.t);
      lines.push_back({fmt::format("frame lower value, gamma = {}, t = {}",
                                   cfg.gamma, cfg.t),
                       fb.predicted_lower, fb.lambda_min, fb.lower_holds(),
                       true});
      lines.push_back(
          {fmt::format("frame upper value, t = {}", cfg.t), fb.lambda_max,
           fb.predicted_upper, fb.upper_holds(), true});
    } catch (const FrameFailure& e) {
      lines.push_back({"frame assembly", 0.0, 0.0, false, true});
    }
  }
  return lines;
}

}  // namespace nsrecon
