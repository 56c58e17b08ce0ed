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

#include "nsrecon/signal.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/sin_pi.hpp>
#include <fmt/format.h>

#include "nsrecon/errors.h"
#include "nsrecon/quadrature.h"
#include "nsrecon/rng.h"

namespace nsrecon {

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  return boost::math::sin_pi(x) / (std::numbers::pi * x);
}

double SignalModel::operator()(double t) const {
  double sum = 0.0;
  for (const SincTerm& term : terms_) sum += term.a * Sinc(t - term.k);
  return sum;
}

void SignalModel::WriteCsv(std::ostream& out) const {
  out << fmt::format("# sinc-train seed={} target_sup={:.17g}\n", seed_,
                     target_sup_);
  out << "k,a_k\n";
  for (const SincTerm& term : terms_) {
    out << fmt::format("{},{:.17g}\n", term.k, term.a);
  }
}

double SupOnGrid(const SignalModel& f, double half_width, int points) {
  double sup = 0.0;
  const double step = 2.0 * half_width / (points - 1);
  for (int i = 0; i < points; ++i) {
    sup = std::max(sup, std::abs(f(-half_width + i * step)));
  }
  return sup;
}

SignalModel SynthTestSignal(const SignalSpec& spec) {
  if (spec.k_range < 1) {
    throw ValidationError(
        fmt::format("k_range must be >= 1, got {}", spec.k_range));
  }
  if (!(spec.target_sup > 0.0 && spec.target_sup <= 1.0)) {
    throw ValidationError(fmt::format("target_sup must lie in (0, 1], got {}",
                                      spec.target_sup));
  }
  Rng rng(spec.seed, Stream::kSignal);
  std::vector<SincTerm> terms;
  for (int k = -spec.k_range; k <= spec.k_range; ++k) {
    terms.push_back({k, rng.Uniform(-1.0, 1.0)});
  }
  const double sup =
      SupOnGrid(SignalModel(terms), spec.grid_half_width, kSupGridPoints);
  const double scale = sup > 0.0 ? spec.target_sup / (sup * kSupSafetyDivisor)
                                 : 0.0;
  for (SincTerm& term : terms) term.a *= scale;
  return SignalModel(std::move(terms), spec.seed, spec.target_sup);
}

double Evaluate(const CoefficientVector& c, const Generator& gen, double t) {
  double sum = 0.0;
  for (int k = -c.max_index; k <= c.max_index; ++k) {
    sum += c.values[static_cast<size_t>(k + c.max_index)] *
           gen(t - k / gen.lambda());
  }
  return sum;
}

CoefficientVector Project(const SignalModel& f, const Generator& gen, double R,
                          double eps) {
  if (!(eps * R >= 1.0)) {
    throw ValidationError(
        fmt::format("eps * R must be >= 1, got {}", eps * R));
  }
  CoefficientVector pf;
  pf.max_index = ApproximationIndexBound(gen.lambda(), R, eps);
  pf.values.resize(static_cast<size_t>(2 * pf.max_index + 1));
  const double scale = 1.0 / std::sqrt(gen.lambda());
  for (int k = -pf.max_index; k <= pf.max_index; ++k) {
    pf.values[static_cast<size_t>(k + pf.max_index)] =
        scale * f(k / gen.lambda());
  }
  return pf;
}

CoefficientVector Project(const CoefficientVector& c, int max_index) {
  CoefficientVector out;
  out.max_index = max_index;
  out.values.assign(static_cast<size_t>(2 * max_index + 1), 0.0);
  const int overlap = std::min(max_index, c.max_index);
  for (int k = -overlap; k <= overlap; ++k) {
    out.values[static_cast<size_t>(k + max_index)] =
        c.values[static_cast<size_t>(k + c.max_index)];
  }
  return out;
}

ProjectionErrorReport MeasureProjectionError(
    const std::function<double(double)>& f, const CoefficientVector& pf,
    const Generator& gen, double R, double eps, double R1, int r) {
  const double outer = (1.0 + 2.5 * eps) * R;
  if (!(R1 > 0.0 && R1 < outer)) {
    throw ValidationError(fmt::format(
        "R1 must lie in (0, (1 + 5 eps / 2) R) = (0, {}), got {}", outer, R1));
  }
  ProjectionErrorReport report;
  const double sq = Simpson(
      [&](double t) {
        const double d = f(t) - Evaluate(pf, gen, t);
        return d * d;
      },
      -R1, R1, kL2SimpsonNodes);
  report.measured = std::sqrt(std::max(sq, 0.0));
  const double rr = static_cast<double>(r);
  report.bound = 2.0 * gen.decay_constant(r) * std::sqrt(gen.lambda()) /
                 (std::sqrt(2.0 * rr - 1.0) * (rr - 1.5) *
                  std::pow(outer - R1, rr - 1.5));
  report.vacuous = report.bound > kVacuousBound;
  return report;
}

}  // namespace nsrecon
