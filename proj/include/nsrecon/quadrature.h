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

#ifndef NSRECON_QUADRATURE_H_
#define NSRECON_QUADRATURE_H_

#include <functional>
#include <vector>

namespace nsrecon {

// Nodes and weights of a quadrature rule on a finite interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule GaussLegendre(int order);

// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels of
// `order` nodes each.
QuadratureRule CompositeGaussLegendre(double a, double b, int panels,
                                      int order);

// Composite Simpson rule on [a, b] with an odd number of nodes (>= 3).
double Simpson(const std::function<double(double)>& f, double a, double b,
               int nodes);

}  // namespace nsrecon

#endif  // NSRECON_QUADRATURE_H_
