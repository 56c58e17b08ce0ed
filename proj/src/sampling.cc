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

#include "nsrecon/sampling.h"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "nsrecon/errors.h"
#include "nsrecon/rng.h"

namespace nsrecon {

void SampleConfig::Validate() const {
  if (m < 1) throw ValidationError(fmt::format("m must be >= 1, got {}", m));
  if (p < 1 || p > m) {
    throw ValidationError(fmt::format("p must lie in [1, m], got {}", p));
  }
  if (m % p != 0) {
    throw ValidationError(fmt::format("p = {} does not divide m = {}", p, m));
  }
  if (!(R > 0.0)) throw ValidationError("R must be > 0");
  if (!(eps * R >= 1.0)) {
    throw ValidationError(
        fmt::format("eps * R must be >= 1, got {}", eps * R));
  }
}

Bin Classify(double x, double R, double eps) {
  const double a = std::abs(x);
  if (a < (1.0 + eps) * R) return Bin::kInner;
  if (a < (1.0 + 2.0 * eps) * R) return Bin::kMiddle;
  return Bin::kOuter;
}

std::vector<double> DrawSamples(const SampleConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed, Stream::kCoordinates);
  const double w = cfg.half_width();
  std::vector<double> samples(static_cast<size_t>(cfg.m));
  for (double& x : samples) x = rng.Uniform(-w, w);
  return samples;
}

std::array<std::vector<int>, 3> DrawSigns(uint64_t seed,
                                          const std::array<int, 3>& lengths) {
  Rng rng(seed, Stream::kSigns);
  std::array<std::vector<int>, 3> signs;
  for (int b = 0; b < 3; ++b) {
    signs[b].resize(static_cast<size_t>(lengths[b]));
    for (int& s : signs[b]) s = rng.Sign();
  }
  return signs;
}

BinnedSamples PartitionBins(std::span<const double> samples,
                            const SampleConfig& cfg) {
  cfg.Validate();
  if (samples.size() != static_cast<size_t>(cfg.m)) {
    throw ValidationError(fmt::format("expected {} samples, got {}", cfg.m,
                                      samples.size()));
  }
  BinnedSamples out;
  out.block_length = cfg.block_length();
  std::array<std::vector<double>, 3> raw;
  for (double x : samples) {
    raw[static_cast<int>(Classify(x, cfg.R, cfg.eps))].push_back(x);
  }
  int cumulative = 0;
  for (int b = 0; b < 3; ++b) {
    out.raw_counts[b] = static_cast<int>(raw[b].size());
    const int blocks = out.raw_counts[b] * cfg.p / cfg.m;
    cumulative += blocks;
    out.block_counts[b] = cumulative;
    const auto kept = static_cast<size_t>(blocks * out.block_length);
    out.bins[b].assign(raw[b].begin(), raw[b].begin() + kept);
    out.discarded += out.raw_counts[b] - static_cast<int>(kept);
  }
  for (int b = 0; b < 3; ++b) {
    if (out.blocks_in(b) == 0) {
      throw FrameFailure(
          fmt::format("bin {} holds {} samples, fewer than one block of {}",
                      b + 1, out.raw_counts[b], out.block_length),
          0.0);
    }
  }
  return out;
}

BinnedSamples DrawBinnedSamples(const SampleConfig& cfg) {
  BinnedSamples out = PartitionBins(DrawSamples(cfg), cfg);
  out.signs = DrawSigns(cfg.seed, {static_cast<int>(out.bins[0].size()),
                                   static_cast<int>(out.bins[1].size()),
                                   static_cast<int>(out.bins[2].size())});
  return out;
}

std::vector<double> BinnedSamples::Coordinates() const {
  std::vector<double> all;
  all.reserve(static_cast<size_t>(size()));
  for (const auto& bin : bins) all.insert(all.end(), bin.begin(), bin.end());
  return all;
}

std::vector<double> BinnedSamples::ConcatenatedSigns() const {
  std::vector<double> all;
  all.reserve(static_cast<size_t>(size()));
  for (const auto& bin : signs) all.insert(all.end(), bin.begin(), bin.end());
  return all;
}

void BinnedSamples::WriteCsv(std::ostream& out) const {
  out << "bin,index,coordinate,sign\n";
  for (int b = 0; b < 3; ++b) {
    for (size_t i = 0; i < bins[b].size(); ++i) {
      const int sign = i < signs[b].size() ? signs[b][i] : 1;
      out << fmt::format("{},{},{:.17g},{}\n", b + 1, i + 1, bins[b][i], sign);
    }
  }
}

}  // namespace nsrecon
