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

#include "nsrecon/condense.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <fmt/format.h>

#include "nsrecon/errors.h"

namespace nsrecon {
namespace {

void FillNorms(CondensationVector& nu) {
  nu.l1 = 0.0;
  double sq = 0.0;
  for (double e : nu.entries) {
    nu.l1 += std::abs(e);
    sq += e * e;
  }
  nu.l2 = std::sqrt(sq);
}

double RowNormBound(std::span<const double> row_l1) {
  double sum = 0.0;
  for (double r : row_l1) sum += r * r;
  return std::sqrt(sum);
}

}  // namespace

bool IsSigmaDeltaBlockLength(int order, int block_length) {
  return order >= 1 && block_length >= 1 &&
         (block_length + order - 1) % order == 0;
}

std::array<int, 2> NearestSigmaDeltaBlockLengths(int order, int block_length) {
  const int lt = (block_length + order - 1) / order;
  const int below = lt >= 1 ? lt * order - order + 1 : 0;
  int above = (lt + 1) * order - order + 1;
  if (below == block_length) above = block_length;
  return {below, above};
}

CondensationVector NuSigmaDelta(int order, int block_length) {
  if (!IsSigmaDeltaBlockLength(order, block_length)) {
    const auto [lo, hi] = NearestSigmaDeltaBlockLengths(order, block_length);
    throw ValidationError(fmt::format(
        "block length m/p = {} is not of the form lambda_tilde * {} - {} + 1; "
        "nearest valid values are {} and {}",
        block_length, order, order, lo, hi));
  }
  const int lambda_tilde = (block_length + order - 1) / order;
  std::vector<int64_t> poly{1};
  for (int n = 0; n < order; ++n) {
    std::vector<int64_t> next(poly.size() + lambda_tilde - 1, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      for (int j = 0; j < lambda_tilde; ++j) {
        if (__builtin_add_overflow(next[i + j], poly[i], &next[i + j])) {
          throw ValidationError("sigma-delta condensation vector overflows");
        }
      }
    }
    poly = std::move(next);
  }
  CondensationVector nu;
  nu.kind = CondensationVector::Kind::kSigmaDelta;
  nu.order = order;
  nu.lambda_tilde = lambda_tilde;
  nu.entries.assign(poly.begin(), poly.end());
  FillNorms(nu);
  return nu;
}

CondensationVector NuBeta(double beta, int block_length) {
  if (!(beta > 1.0)) {
    throw ValidationError(fmt::format("beta must be > 1, got {}", beta));
  }
  if (block_length < 1) {
    throw ValidationError("block length must be >= 1");
  }
  CondensationVector nu;
  nu.kind = CondensationVector::Kind::kBeta;
  nu.beta = beta;
  nu.entries.resize(static_cast<size_t>(block_length));
  nu.entries.back() = std::pow(beta, -block_length);
  for (int i = block_length - 2; i >= 0; --i) {
    nu.entries[static_cast<size_t>(i)] =
        beta * nu.entries[static_cast<size_t>(i + 1)];
  }
  FillNorms(nu);
  return nu;
}

CondensationVector NuIdentity() {
  CondensationVector nu;
  nu.entries = {1.0};
  FillNorms(nu);
  return nu;
}

BlockCondensation::BlockCondensation(CondensationVector nu, int blocks)
    : nu_(std::move(nu)), blocks_(blocks) {
  if (blocks < 0) throw ValidationError("block count must be >= 0");
  if (nu_.entries.empty() || !(nu_.l1 > 0.0)) {
    throw ValidationError("condensation vector must be nonzero");
  }
}

std::vector<double> BlockCondensation::Apply(std::span<const double> x) const {
  if (x.size() != static_cast<size_t>(cols())) {
    throw ValidationError(fmt::format(
        "condensation expects length {}, got {}", cols(), x.size()));
  }
  const int len = block_length();
  std::vector<double> out(static_cast<size_t>(blocks_), 0.0);
  for (int j = 0; j < blocks_; ++j) {
    double sum = 0.0;
    for (int i = 0; i < len; ++i) {
      sum += nu_.entries[static_cast<size_t>(i)] *
             x[static_cast<size_t>(j * len + i)];
    }
    out[static_cast<size_t>(j)] = sum / nu_.l1;
  }
  return out;
}

Eigen::MatrixXd BlockCondensation::Dense() const {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(rows(), cols());
  const int len = block_length();
  for (int j = 0; j < blocks_; ++j) {
    for (int i = 0; i < len; ++i) v(j, j * len + i) = weight(i);
  }
  return v;
}

WeightMatrix WeightMatrix::FromBlocks(
    const std::array<int, 3>& cumulative_blocks, double R, double eps) {
  const auto [p1, p2, p3] = cumulative_blocks;
  if (!(0 < p1 && p1 < p2 && p2 < p3)) {
    throw ValidationError(fmt::format(
        "weight matrix needs 0 < p1 < p2 < p3, got ({}, {}, {})", p1, p2, p3));
  }
  std::vector<double> d(static_cast<size_t>(p3));
  const double w1 = std::sqrt(2.0 * (1.0 + eps) * R / p1);
  const double w2 = std::sqrt(2.0 * eps * R / (p2 - p1));
  const double w3 = std::sqrt(2.0 * eps * R / (p3 - p2));
  for (int i = 0; i < p3; ++i) {
    d[static_cast<size_t>(i)] = i < p1 ? w1 : (i < p2 ? w2 : w3);
  }
  return WeightMatrix(std::move(d));
}

WeightMatrix WeightMatrix::Identity(int size) {
  return WeightMatrix(std::vector<double>(static_cast<size_t>(size), 1.0));
}

double InfToTwoBound(const Eigen::MatrixXd& m) {
  std::vector<double> rows(static_cast<size_t>(m.rows()));
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    rows[static_cast<size_t>(j)] = m.row(j).cwiseAbs().sum();
  }
  return RowNormBound(rows);
}

std::vector<double> CondensedTransferRowNorms(const BlockCondensation& v,
                                              const TransferOperator& h) {
  if (v.cols() != h.size()) {
    throw ValidationError(fmt::format(
        "condensation has {} columns but transfer operator has size {}",
        v.cols(), h.size()));
  }
  const int len = v.block_length();
  const int band = h.bandwidth();
  const auto& nu = v.nu().entries;
  std::vector<double> norms(static_cast<size_t>(v.rows()));
  std::vector<double> buf(static_cast<size_t>(len + band));
  for (int j = 0; j < v.rows(); ++j) {
    // buf[c + band] holds the unnormalized entry for column j * len + c.
    std::fill(buf.begin(), buf.end(), 0.0);
    const int first = j * len;
    for (int i = 0; i < len; ++i) {
      const int row = first + i;
      buf[static_cast<size_t>(i + band)] += nu[static_cast<size_t>(i)];
      for (int lag = 1; lag <= band && lag <= row; ++lag) {
        buf[static_cast<size_t>(i - lag + band)] -=
            nu[static_cast<size_t>(i)] * h.Feedback(row, lag);
      }
    }
    double l1 = 0.0;
    for (double b : buf) l1 += std::abs(b);
    norms[static_cast<size_t>(j)] = l1 / v.nu().l1;
  }
  return norms;
}

CondensationBoundReport VerifySigmaDeltaBound(int order, int block_length,
                                              int blocks) {
  const BlockCondensation v(NuSigmaDelta(order, block_length), blocks);
  const auto h = TransferOperator::SigmaDelta(order, v.cols());
  CondensationBoundReport report;
  report.label = fmt::format("sigma-delta n={} m/p={} p={}", order,
                             block_length, blocks);
  report.lhs = RowNormBound(CondensedTransferRowNorms(v, h));
  report.rhs = std::sqrt(static_cast<double>(blocks)) *
               std::pow(8.0 * order, order + 1) *
               std::pow(static_cast<double>(block_length), -order);
  return report;
}

CondensationBoundReport VerifyBetaBound(double beta, int block_length,
                                        int blocks) {
  const BlockCondensation v(NuBeta(beta, block_length), blocks);
  const auto h = TransferOperator::Beta(beta, block_length, v.cols());
  CondensationBoundReport report;
  report.label =
      fmt::format("beta={} m/p={} p={}", beta, block_length, blocks);
  report.lhs = RowNormBound(CondensedTransferRowNorms(v, h));
  report.rhs = std::sqrt(static_cast<double>(blocks)) *
               std::pow(beta, 1.0 - block_length);
  return report;
}

}  // namespace nsrecon
