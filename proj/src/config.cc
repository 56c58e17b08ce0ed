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

#include "nsrecon/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "nsrecon/condense.h"
#include "nsrecon/errors.h"

namespace nsrecon {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string NormalizeKey(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = Trim(value);
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) {
    throw ValidationError(fmt::format("{}: cannot parse '{}'", key, value));
  }
  return out;
}

// Accepts "a/b" as well as plain decimals, so that delta = 1/130 works.
double ParseReal(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  const auto slash = v.find('/');
  if (slash == std::string::npos) return ParseNumber<double>(key, v);
  const double num = ParseNumber<double>(key, v.substr(0, slash));
  const double den = ParseNumber<double>(key, v.substr(slash + 1));
  if (den == 0.0) throw ValidationError(key + ": division by zero");
  return num / den;
}

bool ParseBool(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ValidationError(fmt::format("{}: expected a boolean, got '{}'", key,
                                    value));
}

std::vector<int> ParseIntList(const std::string& key,
                              const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (Trim(item).empty()) continue;
    out.push_back(ParseNumber<int>(key, item));
  }
  return out;
}

}  // namespace

std::string SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kMsq:
      return "msq";
    case Scheme::kSigmaDelta:
      return "sigma-delta";
    case Scheme::kBeta:
      return "beta";
  }
  return "?";
}

Scheme ParseScheme(const std::string& name) {
  const std::string n = Trim(name);
  if (n == "msq") return Scheme::kMsq;
  if (n == "sigma-delta" || n == "sigma_delta" || n == "sd") {
    return Scheme::kSigmaDelta;
  }
  if (n == "beta") return Scheme::kBeta;
  throw ValidationError(fmt::format(
      "unknown scheme '{}' (expected msq, sigma-delta or beta)", name));
}

std::string SignalKindName(SignalKind k) {
  return k == SignalKind::kSincTrain ? "sinc-train" : "in-space";
}

SignalKind ParseSignalKind(const std::string& name) {
  const std::string n = Trim(name);
  if (n == "sinc-train" || n == "sinc_train") return SignalKind::kSincTrain;
  if (n == "in-space" || n == "in_space") return SignalKind::kInSpace;
  throw ValidationError(fmt::format(
      "unknown signal kind '{}' (expected sinc-train or in-space)", name));
}

double ExperimentConfig::beta_value() const {
  if (beta) return *beta;
  return 20.0;
}

int ExperimentConfig::levels_value() const {
  if (levels) return *levels;
  return 80;
}

double ExperimentConfig::delta_value() const {
  if (delta) return *delta;
  switch (scheme) {
    case Scheme::kSigmaDelta:
      return 0.05;
    case Scheme::kBeta:
      return 1.0 / 130.0;
    case Scheme::kMsq:
      break;
  }
  return 1.0 / levels_value();
}

void SetConfigValue(ExperimentConfig& cfg, const std::string& raw_key,
                    const std::string& value) {
  const std::string key = NormalizeKey(Trim(raw_key));
  if (key == "lambda") {
    cfg.lambda = ParseReal(key, value);
  } else if (key == "eps") {
    cfg.eps = ParseReal(key, value);
  } else if (key == "R") {
    cfg.R = ParseReal(key, value);
  } else if (key == "r") {
    cfg.r = ParseNumber<int>(key, value);
  } else if (key == "m") {
    cfg.m = ParseNumber<int>(key, value);
  } else if (key == "p") {
    cfg.p = ParseNumber<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = ParseNumber<uint64_t>(key, value);
  } else if (key == "trials") {
    cfg.trials = ParseNumber<int>(key, value);
  } else if (key == "scheme") {
    cfg.scheme = ParseScheme(value);
  } else if (key == "beta") {
    cfg.beta = ParseReal(key, value);
  } else if (key == "levels") {
    cfg.levels = ParseNumber<int>(key, value);
  } else if (key == "delta") {
    cfg.delta = ParseReal(key, value);
  } else if (key == "order") {
    cfg.order = ParseNumber<int>(key, value);
  } else if (key == "unquantized") {
    cfg.unquantized = ParseBool(key, value);
  } else if (key == "signal_kind") {
    cfg.signal_kind = ParseSignalKind(value);
  } else if (key == "signal_seed") {
    cfg.signal.seed = ParseNumber<uint64_t>(key, value);
  } else if (key == "k_range") {
    cfg.signal.k_range = ParseNumber<int>(key, value);
  } else if (key == "target_sup") {
    cfg.signal.target_sup = ParseReal(key, value);
  } else if (key == "eval_points") {
    cfg.eval_points = ParseNumber<int>(key, value);
  } else if (key == "m_list") {
    cfg.m_list = ParseIntList(key, value);
  } else if (key == "gamma") {
    cfg.gamma = ParseReal(key, value);
  } else if (key == "t") {
    cfg.t = ParseReal(key, value);
  } else {
    throw ValidationError(fmt::format("unknown config key '{}'", raw_key));
  }
}

std::map<std::string, std::string> ParseConfigText(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ValidationError(
            fmt::format("config line {}: unterminated section", lineno));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(
          fmt::format("config line {}: expected key = value", lineno));
    }
    out[NormalizeKey(Trim(line.substr(0, eq)))] = Trim(line.substr(eq + 1));
  }
  return out;
}

void ApplyConfigText(ExperimentConfig& cfg, std::istream& in) {
  for (const auto& [k, v] : ParseConfigText(in)) SetConfigValue(cfg, k, v);
}

std::vector<std::string> Diagnose(const ExperimentConfig& cfg) {
  std::vector<std::string> d;
  if (!(cfg.lambda > 1.0)) {
    d.push_back(fmt::format("lambda = {} must exceed 1 (e.g. 2)", cfg.lambda));
  }
  if (!(cfg.eps > 0.0)) d.push_back("eps must be positive (e.g. 0.5)");
  if (!(cfg.R > 0.0)) d.push_back("R must be positive (e.g. 5)");
  if (cfg.eps > 0.0 && cfg.R > 0.0 && cfg.eps * cfg.R < 1.0) {
    d.push_back(fmt::format(
        "eps * R = {} must be at least 1; nearest valid eps is {}",
        cfg.eps * cfg.R, 1.0 / cfg.R));
  }
  if (cfg.r < 4) d.push_back(fmt::format("r = {} must be at least 4", cfg.r));
  if (cfg.trials < 1) d.push_back("trials must be at least 1");
  if (cfg.eval_points < 2) d.push_back("eval_points must be at least 2");
  if (!(cfg.signal.target_sup > 0.0 && cfg.signal.target_sup <= 1.0)) {
    d.push_back("target_sup must lie in (0, 1]");
  }
  if (cfg.signal.k_range < 1) d.push_back("k_range must be at least 1");
  if (cfg.m < 1) d.push_back("m must be positive");

  const int L = cfg.levels_value();
  const double delta = cfg.delta_value();
  if (L < 1) d.push_back("levels must be at least 1");
  if (!(delta > 0.0)) d.push_back("delta must be positive");

  if (cfg.scheme == Scheme::kMsq || cfg.m < 1) return d;

  if (cfg.p < 1 || cfg.p > cfg.m) {
    d.push_back(fmt::format("p = {} must lie in [1, m]", cfg.p));
    return d;
  }
  if (cfg.m % cfg.p != 0) {
    const int p_eff = EffectiveBlockCount(cfg, cfg.m);
    d.push_back(fmt::format(
        "p = {} does not divide m = {}; nearest valid p below is {}, or use "
        "m = {}",
        cfg.p, cfg.m, p_eff, cfg.p * std::max(1, cfg.m / cfg.p)));
    return d;
  }
  const int mp = cfg.m / cfg.p;
  if (cfg.scheme == Scheme::kSigmaDelta) {
    if (cfg.order < 1) {
      d.push_back("order must be at least 1");
    } else if (!IsSigmaDeltaBlockLength(cfg.order, mp)) {
      const auto near = NearestSigmaDeltaBlockLengths(cfg.order, mp);
      std::string hint;
      for (int v : near) {
        if (v < 1) continue;
        if (!hint.empty()) hint += ", ";
        if (cfg.m % v == 0) {
          hint += fmt::format("m/p = {} (p = {})", v, cfg.m / v);
        } else {
          hint += fmt::format("m/p = {} (m = {})", v, v * cfg.p);
        }
      }
      d.push_back(fmt::format(
          "m/p = {} is not of the form {}*k - {} for integer k >= 1; nearest "
          "valid: {}",
          mp, cfg.order, cfg.order - 1, hint));
    } else {
      const double norm = std::pow(2.0, cfg.order) - 1.0;
      if (2.0 * L - norm - 1.0 / delta < 0.0) {
        d.push_back(fmt::format(
            "sigma-delta order {} is unstable for L = {}, delta = {}: need "
            "2L - {} - 1/delta >= 0; smallest stable L is {}",
            cfg.order, L, delta, norm,
            static_cast<int>(std::ceil((norm + 1.0 / delta) / 2.0))));
      }
    }
  } else {
    const double b = cfg.beta_value();
    if (!(b > 1.0)) {
      d.push_back(fmt::format("beta = {} must exceed 1", b));
    } else if (2.0 * L - b - 1.0 / delta < 0.0) {
      d.push_back(fmt::format(
          "beta = {} is unstable for L = {}, delta = {}: need 2L - beta - "
          "1/delta >= 0; largest stable beta is {}",
          b, L, delta, 2.0 * L - 1.0 / delta));
    }
  }
  return d;
}

void Validate(const ExperimentConfig& cfg) {
  const auto d = Diagnose(cfg);
  if (d.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& s : d) msg += "\n  " + s;
  throw ValidationError(msg);
}

int EffectiveBlockCount(const ExperimentConfig& cfg, int m) {
  if (cfg.scheme == Scheme::kMsq) return m;
  for (int p = std::min(cfg.p, m); p >= 1; --p) {
    if (m % p != 0) continue;
    if (cfg.scheme == Scheme::kSigmaDelta &&
        !IsSigmaDeltaBlockLength(cfg.order, m / p)) {
      continue;
    }
    return p;
  }
  return 0;
}

std::string ToText(const ExperimentConfig& cfg) {
  std::string list;
  for (size_t i = 0; i < cfg.m_list.size(); ++i) {
    list += (i ? "," : "") + std::to_string(cfg.m_list[i]);
  }
  return fmt::format(
      "lambda = {}\neps = {}\nR = {}\nr = {}\nm = {}\np = {}\nseed = {}\n"
      "trials = {}\nscheme = {}\nbeta = {}\nlevels = {}\ndelta = {}\n"
      "order = {}\nunquantized = {}\nsignal_kind = {}\nsignal_seed = {}\n"
      "k_range = {}\ntarget_sup = {}\neval_points = {}\nm_list = {}\n"
      "gamma = {}\nt = {}\n",
      cfg.lambda, cfg.eps, cfg.R, cfg.r, cfg.m, cfg.p, cfg.seed, cfg.trials,
      SchemeName(cfg.scheme), cfg.beta_value(), cfg.levels_value(),
      cfg.delta_value(), cfg.order, cfg.unquantized,
      SignalKindName(cfg.signal_kind), cfg.signal.seed, cfg.signal.k_range,
      cfg.signal.target_sup, cfg.eval_points, list, cfg.gamma, cfg.t);
}

}  // namespace nsrecon
