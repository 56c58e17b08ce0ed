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

#ifndef NSRECON_CONDENSE_H_
#define NSRECON_CONDENSE_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nsrecon/quantize.h"

namespace nsrecon {

// Row vector nu that condenses one block of m / p quantized samples.
struct CondensationVector {
  enum class Kind { kIdentity, kSigmaDelta, kBeta };

  Kind kind = Kind::kIdentity;
  std::vector<double> entries;
  double l1 = 0.0;
  double l2 = 0.0;
  int order = 0;         // sigma-delta n
  int lambda_tilde = 0;  // sigma-delta: m / p = lambda_tilde * n - n + 1
  double beta = 0.0;

  int length() const { return static_cast<int>(entries.size()); }
};

// True when block_length = lambda_tilde * order - order + 1 for an integer
// lambda_tilde >= 1.
bool IsSigmaDeltaBlockLength(int order, int block_length);

// The valid block lengths bracketing `block_length` (the lower one is 0 when
// none exists below).
std::array<int, 2> NearestSigmaDeltaBlockLengths(int order, int block_length);

// Coefficients of (1 + x + ... + x^(lambda_tilde - 1))^order, computed in
// exact integer arithmetic.
CondensationVector NuSigmaDelta(int order, int block_length);

// [beta^-1, ..., beta^-(m/p)]. Built from the last entry upwards so that
// nu_i == beta * nu_{i+1} holds exactly in floating point; products with the
// beta transfer operator then cancel without round-off.
CondensationVector NuBeta(double beta, int block_length);

// nu = [1]: no condensation (the memoryless path, V = I).
CondensationVector NuIdentity();

// (I_blocks kron nu) / ||nu||_1.
class BlockCondensation {
 public:
  BlockCondensation(CondensationVector nu, int blocks);

  const CondensationVector& nu() const { return nu_; }
  int rows() const { return blocks_; }
  int cols() const { return blocks_ * nu_.length(); }
  int block_length() const { return nu_.length(); }
  // Normalized entry for position `i` within a block.
  double weight(int i) const { return nu_.entries[static_cast<size_t>(i)] / nu_.l1; }

  std::vector<double> Apply(std::span<const double> x) const;
  Eigen::MatrixXd Dense() const;

 private:
  CondensationVector nu_;
  int blocks_;
};

// Diagonal weights sqrt(2 (1 + eps) R / p1) on the first p1 rows,
// sqrt(2 eps R / (p2 - p1)) on the next, sqrt(2 eps R / (p3 - p2)) on the
// last.
class WeightMatrix {
 public:
  static WeightMatrix FromBlocks(const std::array<int, 3>& cumulative_blocks,
                                 double R, double eps);
  static WeightMatrix Identity(int size);

  const std::vector<double>& diagonal() const { return diagonal_; }
  int size() const { return static_cast<int>(diagonal_.size()); }
  double operator[](int i) const { return diagonal_[static_cast<size_t>(i)]; }

 private:
  explicit WeightMatrix(std::vector<double> d) : diagonal_(std::move(d)) {}
  std::vector<double> diagonal_;
};

// sqrt(sum_j ||row_j||_1^2), an upper bound on ||M||_{inf -> 2} that is exact
// when rows have disjoint column support.
double InfToTwoBound(const Eigen::MatrixXd& m);

// l1 norms of the rows of V H, computed block by block from the band of H
// without forming either matrix. V must have as many columns as H has rows.
std::vector<double> CondensedTransferRowNorms(const BlockCondensation& v,
                                              const TransferOperator& h);

struct CondensationBoundReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass() const { return lhs <= rhs; }
};

// ||V_sd D^n||_{inf -> 2} <= sqrt(p) (8n)^(n+1) (m/p)^-n.
CondensationBoundReport VerifySigmaDeltaBound(int order, int block_length,
                                              int blocks);
// ||V_beta H_beta||_{inf -> 2} <= sqrt(p) beta^(1 - m/p).
CondensationBoundReport VerifyBetaBound(double beta, int block_length,
                                        int blocks);

}  // namespace nsrecon

#endif  // NSRECON_CONDENSE_H_
