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

#ifndef NSRECON_SAMPLING_H_
#define NSRECON_SAMPLING_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace nsrecon {

struct SampleConfig {
  int m = 3000;
  int p = 200;
  double R = 5.0;
  double eps = 0.5;
  uint64_t seed = 1;

  // p divides m, m / p >= 1 and eps * R >= 1.
  void Validate() const;
  int block_length() const { return m / p; }
  // Samples are drawn from [-(1 + 3 eps) R, (1 + 3 eps) R].
  double half_width() const { return (1.0 + 3.0 * eps) * R; }
};

// Inner: |x| < (1 + eps) R. Middle: (1 + eps) R <= |x| < (1 + 2 eps) R.
// Outer: (1 + 2 eps) R <= |x| <= (1 + 3 eps) R.
enum class Bin { kInner = 0, kMiddle = 1, kOuter = 2 };

Bin Classify(double x, double R, double eps);

// m i.i.d. uniform points from the coordinate stream of cfg.seed.
std::vector<double> DrawSamples(const SampleConfig& cfg);

// Independent +-1 signs from the sign stream of `seed`, one list per bin.
std::array<std::vector<int>, 3> DrawSigns(uint64_t seed,
                                          const std::array<int, 3>& lengths);

// Samples split into the three bins, each truncated to a whole number of
// blocks of length m / p, in order of appearance.
struct BinnedSamples {
  std::array<std::vector<double>, 3> bins;
  std::array<std::vector<int>, 3> signs;
  std::array<int, 3> raw_counts{};
  // Cumulative block counts p_1 <= p_2 <= p_3.
  std::array<int, 3> block_counts{};
  int block_length = 1;
  int discarded = 0;

  int blocks() const { return block_counts[2]; }
  int blocks_in(int bin) const {
    return block_counts[bin] - (bin == 0 ? 0 : block_counts[bin - 1]);
  }
  // Total kept samples, (m / p) * p_3.
  int size() const { return block_length * blocks(); }

  // Bin 1, then bin 2, then bin 3.
  std::vector<double> Coordinates() const;
  std::vector<double> ConcatenatedSigns() const;

  // Columns: bin, index, coordinate, sign.
  void WriteCsv(std::ostream& out) const;
};

// Bins the raw stream. Throws FrameFailure when a bin receives no complete
// block, since the weight matrix would divide by its block count.
BinnedSamples PartitionBins(std::span<const double> samples,
                            const SampleConfig& cfg);

// DrawSamples, PartitionBins and DrawSigns in one step.
BinnedSamples DrawBinnedSamples(const SampleConfig& cfg);

}  // namespace nsrecon

#endif  // NSRECON_SAMPLING_H_
