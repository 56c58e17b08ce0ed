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

#ifndef NSRECON_QUANTIZE_H_
#define NSRECON_QUANTIZE_H_

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nsrecon {

// Midrise alphabet {+-(2l - 1) delta : 1 <= l <= L}.
class MidriseAlphabet {
 public:
  MidriseAlphabet(int levels, double delta);

  int levels() const { return levels_; }
  double delta() const { return delta_; }
  int size() const { return 2 * levels_; }
  // i-th element in increasing order, i = 0 .. 2L - 1.
  double element(int i) const { return (2.0 * i - 2.0 * levels_ + 1.0) * delta_; }
  // Closest element; midpoints go to the larger neighbour and out-of-range
  // inputs saturate.
  double Nearest(double w) const;

 private:
  int levels_;
  double delta_;
};

// Alphabet {-1 + (2n + 1) / (2L) : 0 <= n <= 2L - 1}, spacing 1 / L, used for
// memoryless scalar quantization.
class MsqAlphabet {
 public:
  explicit MsqAlphabet(int levels);

  int levels() const { return levels_; }
  int size() const { return 2 * levels_; }
  double element(int i) const {
    return -1.0 + (2.0 * i + 1.0) / (2.0 * levels_);
  }
  double Nearest(double w) const;

 private:
  int levels_;
};

// Lower-triangular, unit-diagonal transfer operator H = I - Ht. Only the
// band of Ht is stored implicitly.
class TransferOperator {
 public:
  enum class Kind { kIdentity, kSigmaDelta, kBeta };

  static TransferOperator Identity(int size);
  // D^order, with (D^n)_{s, s - j} = (-1)^j binom(n, j) (Toeplitz).
  static TransferOperator SigmaDelta(int order, int size);
  // Block diagonal with -beta on the subdiagonal inside each block.
  static TransferOperator Beta(double beta, int block, int size);

  Kind kind() const { return kind_; }
  int size() const { return size_; }
  int order() const { return order_; }
  double beta() const { return beta_; }
  int block() const { return block_; }
  // Largest lag j with a nonzero Ht_{s, s - j}.
  int bandwidth() const;

  // Ht_{row, row - lag} for 1 <= lag; zero outside the band.
  double Feedback(int row, int lag) const;

  // ||Ht||_{inf -> inf}, the largest row l1 norm.
  double FeedbackNorm() const;

  // H u.
  std::vector<double> Apply(std::span<const double> u) const;

  Eigen::MatrixXd Dense() const;

 private:
  TransferOperator(Kind kind, int size) : kind_(kind), size_(size) {}

  Kind kind_;
  int size_;
  int order_ = 0;
  double beta_ = 0.0;
  int block_ = 1;
  std::vector<double> taps_;  // Ht coefficients for lags 1..order (sigma-delta)
};

struct QuantizationResult {
  std::vector<double> q;
  std::vector<double> u;
  double max_state = 0.0;
};

// 2L - ||Ht||_{inf -> inf} - mu / delta. A nonnegative margin and
// ||y||_inf <= mu guarantee ||u||_inf <= delta for the greedy quantizer.
double StabilityMargin(const TransferOperator& h, double mu,
                       const MidriseAlphabet& alphabet);

// Greedy noise shaping: w_s = y_s + sum_j Ht_{s, s - j} u_{s - j},
// q_s = Nearest(w_s), u_s = w_s - q_s, with u_s = 0 for s < 0.
// Stability is the caller's concern (see StabilityMargin); the recursion runs
// regardless.
QuantizationResult GreedyNoiseShape(std::span<const double> y,
                                    const TransferOperator& h,
                                    const MidriseAlphabet& alphabet);

// Memoryless scalar quantization, elementwise Nearest.
std::vector<double> Msq(std::span<const double> y,
                        const MsqAlphabet& alphabet);

// Columns: index, y, q, u.
void WriteQuantizedCsv(std::ostream& out, std::span<const double> y,
                       std::span<const double> q, std::span<const double> u);

}  // namespace nsrecon

#endif  // NSRECON_QUANTIZE_H_
