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

#include "nsrecon/frame.h"

#include <cmath>

#include <fmt/format.h>

#include "nsrecon/errors.h"
#include "nsrecon/quadrature.h"

namespace nsrecon {

Eigen::MatrixXd BuildSampleMatrix(std::span<const double> coords,
                                  const KernelContext& ctx) {
  const int n = ctx.dimension();
  const int K = ctx.max_index();
  const Generator& g = ctx.generator();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(coords.size()), n);
  for (size_t i = 0; i < coords.size(); ++i) {
    for (int k = -K; k <= K; ++k) {
      out(static_cast<Eigen::Index>(i), k + K) =
          g(coords[i] - k / ctx.lambda());
    }
  }
  return out;
}

FrameSystem AssembleFrame(const Eigen::MatrixXd& samples,
                          const WeightMatrix& weights,
                          const BlockCondensation& condensation,
                          std::span<const double> signs) {
  if (samples.rows() != condensation.cols()) {
    throw ValidationError(fmt::format(
        "sample matrix has {} rows, condensation expects {}", samples.rows(),
        condensation.cols()));
  }
  if (weights.size() != condensation.rows()) {
    throw ValidationError(fmt::format(
        "weight matrix has size {}, condensation has {} rows", weights.size(),
        condensation.rows()));
  }
  if (!signs.empty() && signs.size() != static_cast<size_t>(samples.rows())) {
    throw ValidationError(fmt::format("expected {} signs, got {}",
                                      samples.rows(), signs.size()));
  }
  FrameSystem fs;
  const int len = condensation.block_length();
  fs.analysis.setZero(condensation.rows(), samples.cols());
  for (int j = 0; j < condensation.rows(); ++j) {
    for (int i = 0; i < len; ++i) {
      const int col = j * len + i;
      double coeff = weights[j] * condensation.weight(i);
      if (!signs.empty()) coeff *= signs[static_cast<size_t>(col)];
      fs.analysis.row(j) += coeff * samples.row(col);
    }
  }
  fs.frame_operator = fs.analysis.transpose() * fs.analysis;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      fs.frame_operator, Eigen::EigenvaluesOnly);
  fs.lambda_min = eig.eigenvalues().minCoeff();
  fs.lambda_max = eig.eigenvalues().maxCoeff();
  return fs;
}

CoefficientVector Reconstruct(const FrameSystem& fs,
                              const WeightMatrix& weights,
                              const BlockCondensation& condensation,
                              std::span<const double> q, double tolerance) {
  if (!(fs.lambda_min > tolerance)) {
    throw FrameFailure(
        fmt::format("frame operator is near singular: lambda_min = {:.3e}",
                    fs.lambda_min),
        fs.lambda_min);
  }
  const std::vector<double> condensed = condensation.Apply(q);
  Eigen::VectorXd meas(condensation.rows());
  for (int j = 0; j < condensation.rows(); ++j) {
    meas(j) = weights[j] * condensed[static_cast<size_t>(j)];
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(fs.frame_operator);
  if (llt.info() != Eigen::Success) {
    throw FrameFailure("Cholesky factorization of the frame operator failed",
                       fs.lambda_min);
  }
  const Eigen::VectorXd c = llt.solve(fs.analysis.transpose() * meas);
  CoefficientVector out;
  out.max_index = (fs.dimension() - 1) / 2;
  out.values.assign(c.data(), c.data() + c.size());
  return out;
}

FrameBoundReport MakeFrameBoundReport(const FrameSystem& fs,
                                      const CondensationVector& nu,
                                      double gamma, double t) {
  FrameBoundReport r;
  r.lambda_min = fs.lambda_min;
  r.lambda_max = fs.lambda_max;
  r.nu_ratio = (nu.l2 * nu.l2) / (nu.l1 * nu.l1);
  r.gamma = gamma;
  r.t = t;
  r.predicted_lower = r.nu_ratio * (1.0 - gamma - 3.0 * t);
  r.predicted_upper = r.nu_ratio * (1.0 + 3.0 * t);
  return r;
}

std::string FrameBoundReport::ToKeyValue() const {
  return fmt::format(
      "lambda_min = {:.9e}\nlambda_max = {:.9e}\nnu_ratio = {:.9e}\n"
      "gamma = {}\nt = {}\npredicted_lower = {:.9e}\npredicted_upper = {:.9e}\n"
      "lower_holds = {}\nupper_holds = {}\n",
      lambda_min, lambda_max, nu_ratio, gamma, t, predicted_lower,
      predicted_upper, lower_holds(), upper_holds());
}

std::string FrameBoundReport::CsvHeader() {
  return "lambda_min,lambda_max,nu_ratio,gamma,t,predicted_lower,"
         "predicted_upper,lower_holds,upper_holds";
}

std::string FrameBoundReport::CsvRow() const {
  return fmt::format("{:.9e},{:.9e},{:.9e},{},{},{:.9e},{:.9e},{},{}",
                     lambda_min, lambda_max, nu_ratio, gamma, t,
                     predicted_lower, predicted_upper, lower_holds() ? 1 : 0,
                     upper_holds() ? 1 : 0);
}

double KernelL2OnInterval(const KernelContext& ctx, double x, double R) {
  const std::vector<double> coeffs = ctx.BasisValues(x);
  const double sq = Simpson(
      [&](double t) {
        const double v = ctx.Synthesize(coeffs, t);
        return v * v;
      },
      -R, R, kL2SimpsonNodes);
  return std::sqrt(std::max(sq, 0.0));
}

double KernelTailBound(const Generator& gen, int r, double R, double R2) {
  if (!(R2 > R)) throw ValidationError("kernel tail bound needs R2 > R");
  const double c = gen.decay_constant(r);
  const double rr = static_cast<double>(r);
  return 6.0 * c * c * GammaR(rr - 0.5, gen.lambda()) /
         (std::sqrt(2.0 * rr - 1.0) * std::pow(0.5 * (R2 - R), rr - 0.5));
}

double KernelDecayBound(const Generator& gen, int r, double x, double y) {
  const double c = gen.decay_constant(r);
  return 2.0 * c * c * GammaR(r - 0.5, gen.lambda()) /
         std::pow(1.0 + 0.5 * std::abs(x - y), r);
}

}  // namespace nsrecon
