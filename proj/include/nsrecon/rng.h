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

#ifndef NSRECON_RNG_H_
#define NSRECON_RNG_H_

#include <cstdint>
#include <random>

namespace nsrecon {

// Independent sub-streams derived from one user seed.
enum class Stream : uint32_t {
  kCoordinates = 0,
  kSigns = 1,
  kSignal = 2,
  kDiagnostics = 3,
};

// Seeded 64-bit Mersenne twister. Uniform and sign draws are computed from
// raw engine output, so sequences do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  Rng(uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1).
  double Canonical() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Canonical(); }

  // +1 or -1 with equal probability.
  int Sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nsrecon

#endif  // NSRECON_RNG_H_
