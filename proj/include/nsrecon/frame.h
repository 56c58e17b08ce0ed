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

#ifndef NSRECON_FRAME_H_
#define NSRECON_FRAME_H_

#include <span>
#include <string>

#include <Eigen/Dense>

#include "nsrecon/condense.h"
#include "nsrecon/generator.h"
#include "nsrecon/signal.h"

namespace nsrecon {

// G_{ik} = g(y_i - k/lambda): row i holds the coordinates of the reproducing
// kernel at y_i, so (G c)_i is the value at y_i of the function with
// coefficients c. Rows follow the order of `coords`.
Eigen::MatrixXd BuildSampleMatrix(std::span<const double> coords,
                                  const KernelContext& ctx);

// Analysis matrix of the random frame {h_j} in the orthonormal shift basis
// and its frame operator.
struct FrameSystem {
  Eigen::MatrixXd analysis;        // B = W V diag(signs) G, p3 x N
  Eigen::MatrixXd frame_operator;  // S = B^T B, N x N
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  int measurements() const { return static_cast<int>(analysis.rows()); }
  int dimension() const { return static_cast<int>(analysis.cols()); }
};

inline constexpr double kSingularityTolerance = 1e-10;

// Empty `signs` means all +1.
FrameSystem AssembleFrame(const Eigen::MatrixXd& samples,
                          const WeightMatrix& weights,
                          const BlockCondensation& condensation,
                          std::span<const double> signs);

// Canonical dual reconstruction c = S^-1 B^T (W V q), by Cholesky solve.
// Throws FrameFailure when lambda_min(S) <= tolerance.
CoefficientVector Reconstruct(const FrameSystem& fs,
                              const WeightMatrix& weights,
                              const BlockCondensation& condensation,
                              std::span<const double> q,
                              double tolerance = kSingularityTolerance);

// Observed spectrum of S against the predicted band
// (||nu||_2^2 / ||nu||_1^2) [1 - gamma - 3t, 1 + 3t].
struct FrameBoundReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double nu_ratio = 0.0;  // ||nu||_2^2 / ||nu||_1^2
  double gamma = 0.0;
  double t = 0.0;
  double predicted_lower = 0.0;
  double predicted_upper = 0.0;

  bool lower_holds() const { return lambda_min >= predicted_lower; }
  bool upper_holds() const { return lambda_max <= predicted_upper; }

  // "key = value" lines.
  std::string ToKeyValue() const;
  static std::string CsvHeader();
  std::string CsvRow() const;
};

FrameBoundReport MakeFrameBoundReport(const FrameSystem& fs,
                                      const CondensationVector& nu,
                                      double gamma, double t);

// ||k_x||_{L2[-R, R]} by composite Simpson.
double KernelL2OnInterval(const KernelContext& ctx, double x, double R);

// 6 C_r^2 Gamma_{r - 1/2} / (sqrt(2r - 1) ((R2 - R) / 2)^(r - 1/2)), the
// bound on ||k_x||_{L2[-R, R]} for |x| >= R2 > R.
double KernelTailBound(const Generator& gen, int r, double R, double R2);

// 2 C_r^2 Gamma_{r - 1/2} / (1 + |x - y| / 2)^r.
double KernelDecayBound(const Generator& gen, int r, double x, double y);

}  // namespace nsrecon

#endif  // NSRECON_FRAME_H_
