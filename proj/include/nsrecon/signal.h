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

#ifndef NSRECON_SIGNAL_H_
#define NSRECON_SIGNAL_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "nsrecon/generator.h"

namespace nsrecon {

// sin(pi x) / (pi x), exactly 1 at 0 and exactly 0 at nonzero integers.
double Sinc(double x);

struct SincTerm {
  int k;
  double a;
};

// A pi-bandlimited signal f(t) = sum_k a_k sinc(t - k) with finitely many
// terms. Immutable.
class SignalModel {
 public:
  SignalModel() = default;
  explicit SignalModel(std::vector<SincTerm> terms, uint64_t seed = 0,
                       double target_sup = 0.0)
      : terms_(std::move(terms)), seed_(seed), target_sup_(target_sup) {}

  double operator()(double t) const;

  const std::vector<SincTerm>& terms() const { return terms_; }
  uint64_t seed() const { return seed_; }
  double target_sup() const { return target_sup_; }

  // CSV rows (k, a_k) under a comment line naming seed and target_sup.
  void WriteCsv(std::ostream& out) const;

 private:
  std::vector<SincTerm> terms_;
  uint64_t seed_ = 0;
  double target_sup_ = 0.0;
};

struct SignalSpec {
  uint64_t seed = 1;
  int k_range = 20;
  double target_sup = 0.9;
  // Sup-norm normalization runs over [-grid_half_width, grid_half_width].
  double grid_half_width = 20.0;
};

// Grid used for sup-norm normalization, and the divisor applied on top of it
// because a grid maximum underestimates the true supremum.
inline constexpr int kSupGridPoints = 100000;
inline constexpr double kSupSafetyDivisor = 1.001;

// Coefficients a_k, |k| <= k_range, i.i.d. uniform on [-1, 1] from the
// signal stream of `seed`, rescaled so the grid sup equals target_sup / 1.001.
SignalModel SynthTestSignal(const SignalSpec& spec);

// max |f| over `points` evenly spaced nodes of [-half_width, half_width].
double SupOnGrid(const SignalModel& f, double half_width, int points);

// Coefficients of an element of the approximation space in the orthonormal
// basis g(. - k/lambda), k = -max_index .. max_index.
struct CoefficientVector {
  std::vector<double> values;
  int max_index = 0;

  size_t size() const { return values.size(); }
};

// Evaluates the function represented by `c`.
double Evaluate(const CoefficientVector& c, const Generator& gen, double t);

// Orthogonal projection of a pi-bandlimited signal onto the approximation
// space: c_k = f(k/lambda) / sqrt(lambda). Requires eps * R >= 1.
CoefficientVector Project(const SignalModel& f, const Generator& gen, double R,
                          double eps);

// Orthogonal projection of an element of the shift-invariant space (given by
// coefficients) onto the space with index bound `max_index`: truncation or
// zero padding of the coefficients.
CoefficientVector Project(const CoefficientVector& c, int max_index);

struct ProjectionErrorReport {
  double measured = 0.0;  // ||f - Pf|| on [-R1, R1]
  double bound = 0.0;
  bool vacuous = false;  // bound > 1e6
  bool holds() const { return measured <= bound; }
};

inline constexpr int kL2SimpsonNodes = 2001;
inline constexpr double kVacuousBound = 1e6;

// Measures ||f - Pf||_{L2[-R1, R1]} (composite Simpson) and evaluates the
// decay-based bound 2 C_r sqrt(lambda) / (sqrt(2r - 1) (r - 3/2)
// ((1 + 5 eps / 2) R - R1)^(r - 3/2)). Requires R1 < (1 + 5 eps / 2) R.
ProjectionErrorReport MeasureProjectionError(
    const std::function<double(double)>& f, const CoefficientVector& pf,
    const Generator& gen, double R, double eps, double R1, int r);

}  // namespace nsrecon

#endif  // NSRECON_SIGNAL_H_
