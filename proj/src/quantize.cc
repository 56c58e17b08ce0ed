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

#include "nsrecon/quantize.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <boost/math/special_functions/binomial.hpp>
#include <fmt/format.h>

#include "nsrecon/errors.h"

namespace nsrecon {
namespace {

// Index of the element closest to w among `count` increasing elements,
// starting the search from a guess and preferring the larger element on ties.
template <typename ElementFn>
int NearestIndex(double w, int guess, int count, ElementFn element) {
  int best = std::clamp(guess - 1, 0, count - 1);
  double best_dist = std::abs(w - element(best));
  const int hi = std::clamp(guess + 2, 0, count - 1);
  for (int i = best + 1; i <= hi; ++i) {
    const double dist = std::abs(w - element(i));
    if (dist <= best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

int SafeFloor(double x, int lo, int hi) {
  if (!(x > lo)) return lo;
  if (!(x < hi)) return hi;
  return static_cast<int>(std::floor(x));
}

}  // namespace

MidriseAlphabet::MidriseAlphabet(int levels, double delta)
    : levels_(levels), delta_(delta) {
  if (levels < 1) {
    throw ValidationError(fmt::format("L must be >= 1, got {}", levels));
  }
  if (!(delta > 0.0)) {
    throw ValidationError(fmt::format("delta must be > 0, got {}", delta));
  }
}

double MidriseAlphabet::Nearest(double w) const {
  const int guess = SafeFloor(w / (2.0 * delta_) + levels_, 0, size() - 1);
  return element(NearestIndex(w, guess, size(),
                              [this](int i) { return element(i); }));
}

MsqAlphabet::MsqAlphabet(int levels) : levels_(levels) {
  if (levels < 1) {
    throw ValidationError(fmt::format("L must be >= 1, got {}", levels));
  }
}

double MsqAlphabet::Nearest(double w) const {
  const int guess = SafeFloor((w + 1.0) * levels_ - 0.5, 0, size() - 1);
  return element(NearestIndex(w, guess, size(),
                              [this](int i) { return element(i); }));
}

TransferOperator TransferOperator::Identity(int size) {
  if (size < 0) throw ValidationError("operator size must be >= 0");
  return TransferOperator(Kind::kIdentity, size);
}

TransferOperator TransferOperator::SigmaDelta(int order, int size) {
  if (order < 1) {
    throw ValidationError(
        fmt::format("sigma-delta order must be >= 1, got {}", order));
  }
  if (size < 0) throw ValidationError("operator size must be >= 0");
  TransferOperator h(Kind::kSigmaDelta, size);
  h.order_ = order;
  h.taps_.resize(static_cast<size_t>(order));
  for (int j = 1; j <= order; ++j) {
    const double binom =
        boost::math::binomial_coefficient<double>(order, j);
    // Ht = I - D^n.
    h.taps_[static_cast<size_t>(j - 1)] = (j % 2 == 1 ? 1.0 : -1.0) * binom;
  }
  return h;
}

TransferOperator TransferOperator::Beta(double beta, int block, int size) {
  if (!(beta > 1.0)) {
    throw ValidationError(fmt::format("beta must be > 1, got {}", beta));
  }
  if (block < 1 || size < 0 || size % block != 0) {
    throw ValidationError(fmt::format(
        "beta operator size {} is not a multiple of block {}", size, block));
  }
  TransferOperator h(Kind::kBeta, size);
  h.beta_ = beta;
  h.block_ = block;
  return h;
}

int TransferOperator::bandwidth() const {
  switch (kind_) {
    case Kind::kIdentity:
      return 0;
    case Kind::kSigmaDelta:
      return order_;
    case Kind::kBeta:
      return block_ > 1 ? 1 : 0;
  }
  return 0;
}

double TransferOperator::Feedback(int row, int lag) const {
  if (lag < 1 || row - lag < 0 || row >= size_) return 0.0;
  switch (kind_) {
    case Kind::kIdentity:
      return 0.0;
    case Kind::kSigmaDelta:
      return lag <= order_ ? taps_[static_cast<size_t>(lag - 1)] : 0.0;
    case Kind::kBeta:
      return lag == 1 && row % block_ != 0 ? beta_ : 0.0;
  }
  return 0.0;
}

double TransferOperator::FeedbackNorm() const {
  // Row sums grow with the row index until the band is full.
  const int last = std::min(size_ - 1, bandwidth());
  double worst = 0.0;
  for (int row = 0; row <= last; ++row) {
    double sum = 0.0;
    for (int lag = 1; lag <= bandwidth(); ++lag) {
      sum += std::abs(Feedback(row, lag));
    }
    worst = std::max(worst, sum);
  }
  return worst;
}

std::vector<double> TransferOperator::Apply(std::span<const double> u) const {
  if (u.size() != static_cast<size_t>(size_)) {
    throw ValidationError(fmt::format("operator of size {} applied to length {}",
                                      size_, u.size()));
  }
  std::vector<double> out(u.begin(), u.end());
  for (int s = 0; s < size_; ++s) {
    for (int lag = 1; lag <= bandwidth() && lag <= s; ++lag) {
      out[static_cast<size_t>(s)] -=
          Feedback(s, lag) * u[static_cast<size_t>(s - lag)];
    }
  }
  return out;
}

Eigen::MatrixXd TransferOperator::Dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(size_, size_);
  for (int s = 0; s < size_; ++s) {
    for (int lag = 1; lag <= bandwidth() && lag <= s; ++lag) {
      h(s, s - lag) = -Feedback(s, lag);
    }
  }
  return h;
}

double StabilityMargin(const TransferOperator& h, double mu,
                       const MidriseAlphabet& alphabet) {
  return 2.0 * alphabet.levels() - h.FeedbackNorm() - mu / alphabet.delta();
}

QuantizationResult GreedyNoiseShape(std::span<const double> y,
                                    const TransferOperator& h,
                                    const MidriseAlphabet& alphabet) {
  if (y.size() != static_cast<size_t>(h.size())) {
    throw ValidationError(fmt::format(
        "input length {} does not match transfer operator size {}", y.size(),
        h.size()));
  }
  QuantizationResult result;
  result.q.resize(y.size());
  result.u.resize(y.size());
  const int band = h.bandwidth();
  for (int s = 0; s < h.size(); ++s) {
    double w = y[static_cast<size_t>(s)];
    for (int lag = 1; lag <= band && lag <= s; ++lag) {
      w += h.Feedback(s, lag) * result.u[static_cast<size_t>(s - lag)];
    }
    const double q = alphabet.Nearest(w);
    result.q[static_cast<size_t>(s)] = q;
    result.u[static_cast<size_t>(s)] = w - q;
    result.max_state =
        std::max(result.max_state, std::abs(result.u[static_cast<size_t>(s)]));
  }
  return result;
}

std::vector<double> Msq(std::span<const double> y,
                        const MsqAlphabet& alphabet) {
  std::vector<double> q(y.size());
  std::transform(y.begin(), y.end(), q.begin(),
                 [&](double v) { return alphabet.Nearest(v); });
  return q;
}

void WriteQuantizedCsv(std::ostream& out, std::span<const double> y,
                       std::span<const double> q, std::span<const double> u) {
  out << "index,y,q,u\n";
  for (size_t i = 0; i < y.size(); ++i) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", i + 1, y[i], q[i],
                       i < u.size() ? u[i] : 0.0);
  }
}

}  // namespace nsrecon
