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

#ifndef NSRECON_GENERATOR_H_
#define NSRECON_GENERATOR_H_

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace nsrecon {

// Smooth blend 0 -> 1 on [0, 1] built from w(x) = exp(-1/x) for x > 0.
double SmoothStep(double x);

// Fourier transform of the oversampling generator: flat 1/sqrt(2*lambda*pi)
// on |xi| <= pi, a cosine taper up to (2*lambda - 1)*pi, zero beyond.
// The taper makes the lattice shifts {g(. - k/lambda)} orthonormal.
double GHat(double xi, double lambda);

struct GeneratorParams {
  double lambda = 2.0;
  int quad_points = 2048;
  double grid_step = 1e-3;
  double tail_cut = 60.0;

  // Throws ValidationError when an invariant is violated.
  void Validate() const;
};

// The time-domain generator g, evaluated by quadrature of the cosine
// transform of GHat and cached on a uniform grid over [0, tail_cut].
// Immutable after construction and safe for concurrent reads.
class Generator {
 public:
  // Decay exponents for which C_r is tabulated at construction.
  static constexpr int kMinTabulatedR = 4;
  static constexpr int kMaxTabulatedR = 16;

  explicit Generator(const GeneratorParams& params = {});

  // Rebuilds a generator from a cache previously written by WriteCache.
  static Generator ReadCache(std::istream& in);
  void WriteCache(std::ostream& out) const;

  // Cached value with 4-point cubic interpolation; exactly even, and zero for
  // |t| > tail_cut.
  double operator()(double t) const;

  // Value by direct quadrature, bypassing the cache.
  double EvalDirect(double t) const;

  const GeneratorParams& params() const { return params_; }
  double lambda() const { return params_.lambda; }
  double support_half_width() const;

  // g at grid nodes t_i = i * grid_step, i = 0 .. n; a few nodes past
  // tail_cut are kept for interpolation.
  std::span<const double> cache() const { return cache_; }

  // Tabulated C_r such that |g(t)| <= C_r / (1 + |t|)^r.
  double decay_constant(int r) const;
  const std::map<int, double>& decay_table() const { return decay_table_; }

 private:
  Generator(const GeneratorParams& params, std::vector<double> cache);
  void BuildDecayTable();

  GeneratorParams params_;
  std::vector<double> nodes_;
  std::vector<double> weighted_ghat_;
  std::vector<double> cache_;
  std::map<int, double> decay_table_;
};

// Safety factor applied over the grid maximum when estimating C_r.
inline constexpr double kDecaySafetyFactor = 0.05;

// Estimates C_r from the cached grid: max(1 + eta, (1 + eta) * sup of
// (1 + |t|)^r |g(t)|). Rejects r < 4, an all-zero cache, and caches whose
// value at tail_cut dominates the interior maximum (tail_cut too small).
double EstimateDecayConstant(std::span<const double> cache, double grid_step,
                             double tail_cut, int r);
double EstimateDecayConstant(const Generator& gen, int r);

// Bound on the lattice sum sum_k (1 + |x - k/lambda|)^-r, valid for real
// r >= 2.
double GammaR(double r, double lambda);

// Largest |<g, g(. - k/lambda)> - delta_k0| over 0 <= k <= max_shift, by
// trapezoidal quadrature of the cached generator (exact for band-limited
// integrands up to truncation at tail_cut).
double OrthonormalityDefect(const Generator& gen, int max_shift);

// The finite index set [-K, K], K = floor(lambda (1 + 5 eps / 2) R), of the
// approximation space spanned by g(. - k/lambda).
class KernelContext {
 public:
  KernelContext(const Generator& gen, double R, double eps);
  KernelContext(const Generator& gen, int max_index);

  const Generator& generator() const { return *gen_; }
  int max_index() const { return max_index_; }
  int dimension() const { return 2 * max_index_ + 1; }
  double lambda() const { return gen_->lambda(); }

  // Values g(x - k/lambda) for k = -K .. K; these are the coordinates of the
  // reproducing kernel at x.
  std::vector<double> BasisValues(double x) const;

  // Evaluates sum_k c_k g(x - k/lambda) for coefficients in index order.
  double Synthesize(std::span<const double> coeffs, double x) const;

  // K(x, y) = sum_k g(x - k/lambda) g(y - k/lambda).
  double Kernel(double x, double y) const;

 private:
  const Generator* gen_;
  int max_index_;
};

// floor(lambda (1 + 5 eps / 2) R), robust against round-off just below an
// integer.
int ApproximationIndexBound(double lambda, double R, double eps);

}  // namespace nsrecon

#endif  // NSRECON_GENERATOR_H_
