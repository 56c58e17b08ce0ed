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

#include "nsrecon/generator.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "nsrecon/errors.h"
#include "nsrecon/quadrature.h"

namespace nsrecon {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelOrder = 32;
// Grid nodes kept beyond tail_cut so the interpolation stencil never runs off
// the end of the cache.
constexpr int kCachePadding = 3;
constexpr char kCacheMagic[] = "# nsrecon generator cache v1";

double Bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double SmoothStep(double x) {
  const double a = Bump(x);
  const double b = Bump(1.0 - x);
  return a / (a + b);
}

double GHat(double xi, double lambda) {
  const double a = std::abs(xi);
  const double level = 1.0 / std::sqrt(2.0 * lambda * kPi);
  if (a <= kPi) return level;
  if (a > (2.0 * lambda - 1.0) * kPi) return 0.0;
  const double s = (a - kPi) / ((2.0 * lambda - 2.0) * kPi);
  return level * std::cos(0.5 * kPi * SmoothStep(s));
}

void GeneratorParams::Validate() const {
  if (!(lambda > 1.0)) {
    throw ValidationError(fmt::format("lambda must be > 1, got {}", lambda));
  }
  if (quad_points < 256) {
    throw ValidationError(
        fmt::format("quad_points must be >= 256, got {}", quad_points));
  }
  if (!(grid_step > 0.0)) {
    throw ValidationError(
        fmt::format("grid_step must be > 0, got {}", grid_step));
  }
  if (!(tail_cut > 0.0)) {
    throw ValidationError(
        fmt::format("tail_cut must be > 0, got {}", tail_cut));
  }
}

Generator::Generator(const GeneratorParams& params)
    : Generator(params, std::vector<double>{}) {}

Generator::Generator(const GeneratorParams& params, std::vector<double> cache)
    : params_(params) {
  params_.Validate();
  const int panels = (params_.quad_points + kPanelOrder - 1) / kPanelOrder;
  const QuadratureRule rule = CompositeGaussLegendre(
      0.0, support_half_width(), panels, kPanelOrder);
  nodes_ = rule.nodes;
  weighted_ghat_.resize(nodes_.size());
  // g(t) = (2 / sqrt(2 pi)) int_0^W ghat(xi) cos(t xi) dxi for even ghat.
  const double scale = 2.0 / std::sqrt(2.0 * kPi);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    weighted_ghat_[i] = scale * rule.weights[i] * GHat(nodes_[i], lambda());
  }

  const auto count = static_cast<size_t>(
      std::ceil(params_.tail_cut / params_.grid_step) + 1 + kCachePadding);
  if (cache.empty()) {
    cache_.resize(count);
    for (size_t i = 0; i < count; ++i) {
      cache_[i] = EvalDirect(static_cast<double>(i) * params_.grid_step);
    }
  } else {
    if (cache.size() != count) {
      throw ValidationError(fmt::format(
          "generator cache has {} rows, expected {}", cache.size(), count));
    }
    cache_ = std::move(cache);
  }
  BuildDecayTable();
}

double Generator::support_half_width() const {
  return (2.0 * params_.lambda - 1.0) * kPi;
}

double Generator::EvalDirect(double t) const {
  double sum = 0.0;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    sum += weighted_ghat_[i] * std::cos(t * nodes_[i]);
  }
  return sum;
}

double Generator::operator()(double t) const {
  const double a = std::abs(t);
  if (a > params_.tail_cut) return 0.0;
  const double x = a / params_.grid_step;
  const auto i = static_cast<long>(x);
  const double s = x - static_cast<double>(i);
  // Stencil i-1 .. i+2; g is even so index -1 mirrors to 1.
  const double fm1 = cache_[static_cast<size_t>(i == 0 ? 1 : i - 1)];
  const double f0 = cache_[static_cast<size_t>(i)];
  const double f1 = cache_[static_cast<size_t>(i + 1)];
  const double f2 = cache_[static_cast<size_t>(i + 2)];
  const double wm1 = -s * (s - 1.0) * (s - 2.0) / 6.0;
  const double w0 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  const double w1 = -(s + 1.0) * s * (s - 2.0) / 2.0;
  const double w2 = (s + 1.0) * s * (s - 1.0) / 6.0;
  return wm1 * fm1 + w0 * f0 + w1 * f1 + w2 * f2;
}

void Generator::BuildDecayTable() {
  for (int r = kMinTabulatedR; r <= kMaxTabulatedR; ++r) {
    try {
      decay_table_[r] = EstimateDecayConstant(*this, r);
    } catch (const ValidationError&) {
      // tail_cut too short to certify this exponent; leave it out.
    }
  }
}

double Generator::decay_constant(int r) const {
  const auto it = decay_table_.find(r);
  if (it != decay_table_.end()) return it->second;
  return EstimateDecayConstant(*this, r);
}

void Generator::WriteCache(std::ostream& out) const {
  out << fmt::format("{} lambda={:.17g} quad_points={} grid_step={:.17g} "
                     "tail_cut={:.17g}\n",
                     kCacheMagic, params_.lambda, params_.quad_points,
                     params_.grid_step, params_.tail_cut);
  out << "t,g\n";
  for (size_t i = 0; i < cache_.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g}\n",
                       static_cast<double>(i) * params_.grid_step, cache_[i]);
  }
}

Generator Generator::ReadCache(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind(kCacheMagic, 0) != 0) {
    throw ValidationError("not a generator cache (bad header line)");
  }
  GeneratorParams params;
  std::istringstream fields(header.substr(sizeof(kCacheMagic) - 1));
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "lambda") {
      params.lambda = std::stod(value);
    } else if (key == "quad_points") {
      params.quad_points = std::stoi(value);
    } else if (key == "grid_step") {
      params.grid_step = std::stod(value);
    } else if (key == "tail_cut") {
      params.tail_cut = std::stod(value);
    }
  }
  std::string line;
  std::getline(in, line);  // column header
  std::vector<double> cache;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("malformed generator cache row: " + line);
    }
    cache.push_back(std::stod(line.substr(comma + 1)));
  }
  return Generator(params, std::move(cache));
}

double EstimateDecayConstant(std::span<const double> cache, double grid_step,
                             double tail_cut, int r) {
  if (r < 4) {
    throw ValidationError(fmt::format("decay exponent r must be >= 4, got {}", r));
  }
  double interior = 0.0;
  double tail = 0.0;
  bool nonzero = false;
  for (size_t i = 0; i < cache.size(); ++i) {
    const double t = static_cast<double>(i) * grid_step;
    if (t > tail_cut) break;
    const double v = std::pow(1.0 + t, r) * std::abs(cache[i]);
    nonzero = nonzero || cache[i] != 0.0;
    if (t + grid_step > tail_cut) {
      tail = v;
    } else {
      interior = std::max(interior, v);
    }
  }
  if (!nonzero) throw ValidationError("generator cache is identically zero");
  if (tail > interior) {
    throw ValidationError(fmt::format(
        "tail_cut {} too small to certify decay of order {}", tail_cut, r));
  }
  const double factor = 1.0 + kDecaySafetyFactor;
  return std::max(factor, factor * interior);
}

double EstimateDecayConstant(const Generator& gen, int r) {
  return EstimateDecayConstant(gen.cache(), gen.params().grid_step,
                               gen.params().tail_cut, r);
}

double GammaR(double r, double lambda) {
  if (!(r >= 2.0)) {
    throw ValidationError(fmt::format("Gamma_r needs r >= 2, got {}", r));
  }
  if (!(lambda > 1.0)) {
    throw ValidationError(fmt::format("lambda must be > 1, got {}", lambda));
  }
  return 1.0 + lambda / (r - 1.0) *
                   (1.0 + std::pow(lambda / (lambda - 1.0), r - 1.0));
}

double OrthonormalityDefect(const Generator& gen, int max_shift) {
  // The product of two shifts is band-limited to 2 (2 lambda - 1) pi, so any
  // step below 1 / (2 lambda - 1) integrates it exactly on the whole line.
  const double step = std::min(0.01, 0.25 / (2.0 * gen.lambda() - 1.0));
  const double cut = gen.params().tail_cut;
  double worst = 0.0;
  for (int k = 0; k <= max_shift; ++k) {
    const double shift = k / gen.lambda();
    const auto lo = static_cast<long>(std::floor(-cut / step));
    const auto hi = static_cast<long>(std::ceil((cut + shift) / step));
    double sum = 0.0;
    for (long j = lo; j <= hi; ++j) {
      const double t = static_cast<double>(j) * step;
      sum += gen(t) * gen(t - shift);
    }
    const double target = k == 0 ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(sum * step - target));
  }
  return worst;
}

int ApproximationIndexBound(double lambda, double R, double eps) {
  return static_cast<int>(std::floor(lambda * (1.0 + 2.5 * eps) * R + 1e-9));
}

KernelContext::KernelContext(const Generator& gen, double R, double eps)
    : KernelContext(gen, ApproximationIndexBound(gen.lambda(), R, eps)) {}

KernelContext::KernelContext(const Generator& gen, int max_index)
    : gen_(&gen), max_index_(max_index) {
  if (max_index < 0) {
    throw ValidationError("approximation index set must be nonempty");
  }
}

std::vector<double> KernelContext::BasisValues(double x) const {
  std::vector<double> values(static_cast<size_t>(dimension()));
  for (int k = -max_index_; k <= max_index_; ++k) {
    values[static_cast<size_t>(k + max_index_)] = (*gen_)(x - k / lambda());
  }
  return values;
}

double KernelContext::Synthesize(std::span<const double> coeffs,
                                 double x) const {
  if (coeffs.size() != static_cast<size_t>(dimension())) {
    throw ValidationError(fmt::format("expected {} coefficients, got {}",
                                      dimension(), coeffs.size()));
  }
  double sum = 0.0;
  for (int k = -max_index_; k <= max_index_; ++k) {
    sum += coeffs[static_cast<size_t>(k + max_index_)] *
           (*gen_)(x - k / lambda());
  }
  return sum;
}

double KernelContext::Kernel(double x, double y) const {
  double sum = 0.0;
  for (int k = -max_index_; k <= max_index_; ++k) {
    sum += (*gen_)(x - k / lambda()) * (*gen_)(y - k / lambda());
  }
  return sum;
}

}  // namespace nsrecon
