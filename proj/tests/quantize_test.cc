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

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "nsrecon/errors.h"
#include "test_support.h"

namespace nsrecon {
namespace {

using testing::Draw;

double MaxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// (y - q) - H u, with H u computed by the operator's own Apply.
double ShapingResidual(const std::vector<double>& y,
                       const QuantizationResult& r, const TransferOperator& h) {
  const std::vector<double> hu = h.Apply(r.u);
  double worst = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    worst = std::max(worst, std::abs((y[i] - r.q[i]) - hu[i]));
  }
  return worst;
}

TEST(MidriseAlphabetTest, Elements) {
  const MidriseAlphabet a(3, 0.1);
  std::set<double> got;
  for (int i = 0; i < a.size(); ++i) got.insert(a.element(i));
  const std::set<double> want = {-0.5, -0.30000000000000004, -0.1, 0.1,
                                 0.30000000000000004, 0.5};
  ASSERT_EQ(got.size(), 6u);
  auto it = want.begin();
  for (double v : got) EXPECT_NEAR(v, *it++, 1e-15);
  EXPECT_THROW(MidriseAlphabet(0, 0.1), ValidationError);
  EXPECT_THROW(MidriseAlphabet(2, 0.0), ValidationError);
}

TEST(MidriseAlphabetTest, Nearest) {
  const MidriseAlphabet a(2, 0.25);
  EXPECT_EQ(a.Nearest(0.3), 0.25);
  EXPECT_EQ(a.Nearest(0.0), 0.25);
  EXPECT_EQ(a.Nearest(0.5), 0.75);
  EXPECT_EQ(a.Nearest(-0.5), -0.25);
  EXPECT_EQ(a.Nearest(10.0), 0.75);
  EXPECT_EQ(a.Nearest(-10.0), -0.75);
}

TEST(MidriseAlphabetTest, NearestMatchesExhaustiveSearch) {
  Draw d(1);
  for (int trial = 0; trial < 50; ++trial) {
    const MidriseAlphabet a(d.Int(1, 40), d.Real(0.01, 0.5));
    for (int i = 0; i < 200; ++i) {
      const double w = d.Real(-1.2, 1.2) * 2.0 * a.levels() * a.delta();
      double best = a.element(0);
      for (int j = 1; j < a.size(); ++j) {
        if (std::abs(w - a.element(j)) <= std::abs(w - best)) best = a.element(j);
      }
      EXPECT_EQ(a.Nearest(w), best);
    }
  }
}

TEST(MsqAlphabetTest, ElementsAndNearest) {
  const MsqAlphabet a(10);
  EXPECT_EQ(a.size(), 20);
  EXPECT_NEAR(a.element(0), -0.95, 1e-15);
  EXPECT_NEAR(a.element(19), 0.95, 1e-15);
  for (int i = 1; i < a.size(); ++i) {
    EXPECT_NEAR(a.element(i) - a.element(i - 1), 0.1, 1e-15);
  }
  EXPECT_NEAR(a.Nearest(0.12), 0.15, 1e-15);
  EXPECT_NEAR(a.Nearest(1.5), 0.95, 1e-15);
  EXPECT_NEAR(a.Nearest(-1.0), -0.95, 1e-15);
}

TEST(MsqTest, ExamplesErrorBoundAndIdempotence) {
  const MsqAlphabet a(10);
  EXPECT_NEAR(Msq(std::vector<double>{0.12}, a)[0], 0.15, 1e-15);
  EXPECT_NEAR(Msq(std::vector<double>{-1.0}, a)[0], -0.95, 1e-15);
  Draw d(2);
  for (int L : {1, 10, 80}) {
    const MsqAlphabet b(L);
    const std::vector<double> y = d.Vector(500, -1.0, 1.0);
    const std::vector<double> q = Msq(y, b);
    for (size_t i = 0; i < y.size(); ++i) {
      EXPECT_LE(std::abs(y[i] - q[i]), 1.0 / (2.0 * L) + 1e-15);
    }
    EXPECT_EQ(Msq(q, b), q);
  }
}

TEST(TransferOperatorTest, SigmaDeltaMatrixIsBinomialToeplitz) {
  const Eigen::MatrixXd h = TransferOperator::SigmaDelta(3, 6).Dense();
  const double want[] = {1, -3, 3, -1};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const int lag = i - j;
      const double v = lag >= 0 && lag <= 3 ? want[lag] : 0.0;
      EXPECT_EQ(h(i, j), v) << i << "," << j;
    }
  }
  EXPECT_EQ(TransferOperator::SigmaDelta(7, 50).FeedbackNorm(), 127.0);
}

TEST(TransferOperatorTest, BetaMatrixIsBlockDiagonal) {
  const Eigen::MatrixXd h = TransferOperator::Beta(2.5, 3, 6).Dense();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      double v = 0.0;
      if (i == j) v = 1.0;
      if (i == j + 1 && i % 3 != 0) v = -2.5;
      EXPECT_EQ(h(i, j), v) << i << "," << j;
    }
  }
  EXPECT_THROW(TransferOperator::Beta(2.0, 4, 6), ValidationError);
  EXPECT_THROW(TransferOperator::Beta(1.0, 3, 6), ValidationError);
}

TEST(TransferOperatorTest, ApplyMatchesDense) {
  Draw d(3);
  for (const TransferOperator& h :
       {TransferOperator::Identity(30), TransferOperator::SigmaDelta(4, 30),
        TransferOperator::Beta(5.0, 10, 30)}) {
    const std::vector<double> u = d.Vector(30, -1.0, 1.0);
    const Eigen::VectorXd ref =
        h.Dense() * Eigen::Map<const Eigen::VectorXd>(u.data(), 30);
    const std::vector<double> got = h.Apply(u);
    for (int i = 0; i < 30; ++i) EXPECT_NEAR(got[i], ref(i), 1e-12);
  }
}

TEST(StabilityMarginTest, FigureSettings) {
  EXPECT_DOUBLE_EQ(StabilityMargin(TransferOperator::SigmaDelta(7, 100), 1.0,
                                   MidriseAlphabet(80, 0.05)),
                   13.0);
  EXPECT_DOUBLE_EQ(StabilityMargin(TransferOperator::Beta(5.0, 15, 30), 1.0,
                                   MidriseAlphabet(10, 0.1)),
                   5.0);
  EXPECT_NEAR(StabilityMargin(TransferOperator::Beta(20.0, 15, 30), 1.0,
                              MidriseAlphabet(80, 1.0 / 130.0)),
              10.0, 1e-12);
}

TEST(GreedyNoiseShapeTest, IdentitySingleSample) {
  const QuantizationResult r =
      GreedyNoiseShape(std::vector<double>{0.3}, TransferOperator::Identity(1),
                       MidriseAlphabet(2, 0.25));
  EXPECT_EQ(r.q, (std::vector<double>{0.25}));
  EXPECT_NEAR(r.u[0], 0.05, 1e-15);
}

TEST(GreedyNoiseShapeTest, FirstOrderSigmaDeltaTrace) {
  const std::vector<double> y = {0.3, 0.3, 0.3};
  const TransferOperator h = TransferOperator::SigmaDelta(1, 3);
  const QuantizationResult r = GreedyNoiseShape(y, h, MidriseAlphabet(1, 0.5));
  EXPECT_EQ(r.q, (std::vector<double>{0.5, 0.5, -0.5}));
  EXPECT_NEAR(r.u[0], -0.2, 1e-15);
  EXPECT_NEAR(r.u[1], -0.4, 1e-15);
  EXPECT_NEAR(r.u[2], 0.4, 1e-15);
  EXPECT_LT(ShapingResidual(y, r, h), 1e-15);
}

TEST(GreedyNoiseShapeTest, BetaTrace) {
  const std::vector<double> y = {0.3, 0.3};
  const QuantizationResult r = GreedyNoiseShape(
      y, TransferOperator::Beta(2.0, 2, 2), MidriseAlphabet(2, 0.25));
  EXPECT_EQ(r.q, (std::vector<double>{0.25, 0.25}));
  EXPECT_NEAR(r.u[0], 0.05, 1e-15);
  EXPECT_NEAR(r.u[1], 0.15, 1e-15);
  EXPECT_LE(r.max_state, 0.25);
}

TEST(GreedyNoiseShapeTest, RejectsDimensionMismatch) {
  EXPECT_THROW(GreedyNoiseShape(std::vector<double>{0.1, 0.2},
                                TransferOperator::Identity(3),
                                MidriseAlphabet(2, 0.25)),
               ValidationError);
}

struct ShapingCase {
  const char* name;
  TransferOperator h;
  MidriseAlphabet alphabet;
};

std::vector<ShapingCase> StableCases(int n) {
  return {
      {"sd1", TransferOperator::SigmaDelta(1, n), MidriseAlphabet(2, 0.5)},
      {"sd2", TransferOperator::SigmaDelta(2, n), MidriseAlphabet(4, 0.25)},
      {"sd7", TransferOperator::SigmaDelta(7, n), MidriseAlphabet(80, 0.05)},
      {"beta2", TransferOperator::Beta(2.0, 15, n), MidriseAlphabet(4, 0.25)},
      {"beta5", TransferOperator::Beta(5.0, 15, n), MidriseAlphabet(10, 0.1)},
      {"beta20", TransferOperator::Beta(20.0, 15, n),
       MidriseAlphabet(80, 1.0 / 130.0)},
  };
}

TEST(GreedyNoiseShapeTest, ShapingIdentityAndStability) {
  constexpr int kLength = 300;
  Draw d(4);
  for (const ShapingCase& c : StableCases(kLength)) {
    for (int trial = 0; trial < 200; ++trial) {
      const double mu = d.Real(0.0, 1.0);
      const std::vector<double> y = d.Vector(kLength, -mu, mu);
      const QuantizationResult r = GreedyNoiseShape(y, c.h, c.alphabet);
      ASSERT_LT(ShapingResidual(y, r, c.h), 1e-12) << c.name;
      ASSERT_GE(StabilityMargin(c.h, MaxAbs(y), c.alphabet), 0.0) << c.name;
      ASSERT_LE(r.max_state, c.alphabet.delta()) << c.name;
      ASSERT_EQ(r.max_state, MaxAbs(r.u)) << c.name;
    }
  }
}

TEST(GreedyNoiseShapeTest, SigmaDeltaSolvesDifferenceEquation) {
  Draw d(5);
  for (int n : {1, 2, 3, 7}) {
    const int len = 200;
    const std::vector<double> y = d.Vector(len, -0.9, 0.9);
    const QuantizationResult r = GreedyNoiseShape(
        y, TransferOperator::SigmaDelta(n, len), MidriseAlphabet(200, 0.05));
    // n-fold backward difference with u_s = 0 for s < 0.
    std::vector<double> diff = r.u;
    for (int k = 0; k < n; ++k) {
      for (int s = len - 1; s >= 0; --s) {
        diff[s] -= s > 0 ? diff[s - 1] : 0.0;
      }
    }
    for (int s = 0; s < len; ++s) {
      EXPECT_NEAR(diff[s], y[s] - r.q[s], 1e-12) << "n=" << n << " s=" << s;
    }
  }
}

TEST(QuantizedCsvTest, Columns) {
  std::ostringstream out;
  WriteQuantizedCsv(out, std::vector<double>{0.3}, std::vector<double>{0.25},
                    std::vector<double>{0.05});
  EXPECT_EQ(out.str().rfind("index,y,q,u\n1,0.29999999999999999,0.25,", 0), 0u);
}

}  // namespace
}  // namespace nsrecon
