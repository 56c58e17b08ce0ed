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

#ifndef NSRECON_CONFIG_H_
#define NSRECON_CONFIG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsrecon/signal.h"

namespace nsrecon {

enum class Scheme { kMsq, kSigmaDelta, kBeta };

std::string SchemeName(Scheme s);
Scheme ParseScheme(const std::string& name);

// Which test signal a run reconstructs. kSincTrain is a bandlimited sinc
// train; kInSpace is a random element of the approximation space itself.
enum class SignalKind { kSincTrain, kInSpace };

std::string SignalKindName(SignalKind k);
SignalKind ParseSignalKind(const std::string& name);

struct ExperimentConfig {
  double lambda = 2.0;
  double eps = 0.5;
  double R = 5.0;
  int r = 11;
  int m = 3000;
  int p = 200;
  uint64_t seed = 1;
  int trials = 5;

  Scheme scheme = Scheme::kBeta;
  // Unset quantizer fields take the per-scheme defaults below.
  std::optional<double> beta;
  std::optional<int> levels;
  std::optional<double> delta;
  int order = 7;
  bool unquantized = false;

  SignalKind signal_kind = SignalKind::kSincTrain;
  SignalSpec signal;
  int eval_points = 200;

  std::vector<int> m_list = {500, 1000, 1500, 2000, 2500, 3000};
  double gamma = 0.1;
  double t = 0.25;

  double beta_value() const;
  int levels_value() const;
  double delta_value() const;
  int block_length() const { return m / p; }
};

// Sets one key from its textual value. Keys use the CLI flag spelling with
// either '-' or '_'. Throws ValidationError on unknown keys or bad values.
void SetConfigValue(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// Flat "key = value" text; "[section]" headers are accepted and ignored,
// '#' and ';' start comments.
std::map<std::string, std::string> ParseConfigText(std::istream& in);
void ApplyConfigText(ExperimentConfig& cfg, std::istream& in);

// One message per violated constraint, each with a suggested fix.
std::vector<std::string> Diagnose(const ExperimentConfig& cfg);

// Throws ValidationError carrying every diagnostic.
void Validate(const ExperimentConfig& cfg);

// Largest p' <= p such that p' divides m and, for sigma-delta, m / p' is a
// valid block length. MSQ always uses p' = m. Returns 0 when none exists.
int EffectiveBlockCount(const ExperimentConfig& cfg, int m);

std::string ToText(const ExperimentConfig& cfg);

}  // namespace nsrecon

#endif  // NSRECON_CONFIG_H_
