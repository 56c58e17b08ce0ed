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

#ifndef NSRECON_PIPELINE_H_
#define NSRECON_PIPELINE_H_

#include <ostream>
#include <string>
#include <vector>

#include "nsrecon/config.h"
#include "nsrecon/generator.h"
#include "nsrecon/signal.h"

namespace nsrecon {

// The function being sampled: either a sinc train or an element of the
// approximation space given by its coefficients.
class TestSignal {
 public:
  static TestSignal FromConfig(const ExperimentConfig& cfg,
                               const Generator& gen);
  TestSignal(SignalModel model);
  TestSignal(CoefficientVector coeffs, const Generator& gen);

  double operator()(double t) const;
  SignalKind kind() const { return kind_; }
  const SignalModel& model() const { return model_; }
  const CoefficientVector& coefficients() const { return coeffs_; }

 private:
  SignalKind kind_;
  SignalModel model_;
  CoefficientVector coeffs_;
  const Generator* gen_ = nullptr;
};

// Random element of the approximation space with coefficients drawn from
// the signal stream, scaled so that its grid sup on the sampling interval is
// target_sup / 1.001.
CoefficientVector SynthInSpaceSignal(const SignalSpec& spec,
                                     const Generator& gen, double R,
                                     double eps);

struct RunReport {
  std::string scheme;
  int m = 0;
  int p = 0;
  uint64_t seed = 0;
  bool failed = false;
  std::string failure;
  double sup_error = 0.0;
  double l2_error = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double max_state = 0.0;
  int samples_used = 0;
  int measurements = 0;
  int discarded = 0;
  double seconds = 0.0;  // not part of ToText

  std::string ToText() const;
};

// One trial at cfg.m, cfg.p, cfg.seed. Frame failures are reported in the
// result; invalid configurations throw ValidationError.
RunReport RunOnce(const ExperimentConfig& cfg, const Generator& gen,
                  const TestSignal& f);

struct SweepRow {
  Scheme scheme = Scheme::kBeta;
  int m = 0;
  int p = 0;
  double mean_sup_error = 0.0;  // NaN when every trial failed
  int failures = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;

  void WriteCsv(std::ostream& out) const;
  void WriteSvg(std::ostream& out) const;
};

// For every scheme and every m in cfg.m_list, runs cfg.trials trials with
// seeds cfg.seed, cfg.seed + 1, ... and averages the sup error over the
// trials that did not fail. p is taken from EffectiveBlockCount. Trials run
// on `threads` workers; the reduction order is fixed.
SweepTable Sweep(const ExperimentConfig& cfg,
                 const std::vector<Scheme>& schemes, const Generator& gen,
                 unsigned threads = 0);

struct BoundLine {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  // Probabilistic statements may fail on unlucky draws.
  bool probabilistic = false;

  std::string ToText() const;
};

std::vector<BoundLine> CheckBounds(const ExperimentConfig& cfg,
                                   const Generator& gen);

}  // namespace nsrecon

#endif  // NSRECON_PIPELINE_H_
