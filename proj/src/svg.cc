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

// Minimal log-y line chart of a sweep table.

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "nsrecon/pipeline.h"

namespace nsrecon {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

void SweepTable::WriteSvg(std::ostream& out) const {
  std::map<Scheme, std::vector<const SweepRow*>> series;
  double mmin = 0.0, mmax = 1.0;
  double emin = 1.0, emax = 1.0;
  bool first = true;
  for (const SweepRow& r : rows) {
    series[r.scheme];
    if (!(r.mean_sup_error > 0.0) || !std::isfinite(r.mean_sup_error)) continue;
    series[r.scheme].push_back(&r);
    if (first) {
      mmin = mmax = r.m;
      emin = emax = r.mean_sup_error;
      first = false;
    }
    mmin = std::min<double>(mmin, r.m);
    mmax = std::max<double>(mmax, r.m);
    emin = std::min(emin, r.mean_sup_error);
    emax = std::max(emax, r.mean_sup_error);
  }
  if (mmax <= mmin) mmax = mmin + 1.0;
  const int dlo = static_cast<int>(std::floor(std::log10(emin)));
  int dhi = static_cast<int>(std::ceil(std::log10(emax)));
  if (dhi <= dlo) dhi = dlo + 1;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double m) { return kLeft + pw * (m - mmin) / (mmax - mmin); };
  auto py = [&](double e) {
    return kTop + ph * (dhi - std::log10(e)) / (dhi - dlo);
  };

  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  out << fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
      "fill=\"none\" stroke=\"black\"/>\n",
      kLeft, kTop, pw, ph);
  for (int d = dlo; d <= dhi; ++d) {
    const double y = py(std::pow(10.0, d));
    out << fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
        "stroke=\"#ddd\"/>\n<text x=\"{:.1f}\" y=\"{:.1f}\" "
        "text-anchor=\"end\">1e{}</text>\n",
        kLeft, y, kLeft + pw, y, kLeft - 6.0, y + 4.0, d);
  }
  std::vector<int> ms;
  for (const SweepRow& r : rows) ms.push_back(r.m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  for (int m : ms) {
    out << fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
        px(m), kTop + ph + 18.0, m);
  }
  out << fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">m</text>\n",
      kLeft + pw / 2.0, kHeight - 10.0);
  out << fmt::format(
      "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 {:.1f})\">mean sup error</text>\n",
      kTop + ph / 2.0, kTop + ph / 2.0);

  size_t idx = 0;
  for (const auto& [scheme, pts] : series) {
    const char* color = kColors[idx % std::size(kColors)];
    std::string path;
    for (const SweepRow* r : pts) {
      path += fmt::format("{:.1f},{:.1f} ", px(r->m), py(r->mean_sup_error));
    }
    if (!path.empty()) {
      path.pop_back();
      out << fmt::format(
          "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" "
          "points=\"{}\"/>\n",
          color, path);
    }
    for (const SweepRow* r : pts) {
      out << fmt::format(
          "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n",
          px(r->m), py(r->mean_sup_error), color);
    }
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(idx);
    out << fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
        "stroke=\"{}\" stroke-width=\"2\"/>\n<text x=\"{:.1f}\" "
        "y=\"{:.1f}\">{}</text>\n",
        kLeft + pw + 12.0, ly, kLeft + pw + 36.0, ly, color,
        kLeft + pw + 42.0, ly + 4.0, SchemeName(scheme));
    ++idx;
  }
  out << "</svg>\n";
}

}  // namespace nsrecon
