// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choiqpt/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace choiqpt {
namespace {

// Fixed precision keeps output byte-stable across runs.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\" font-family=\"sans-serif\">\n";
}

std::string rect(double x, double y, double w, double h, const std::string& style) {
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" " + style + "/>\n";
}

std::string text(double x, double y, const std::string& s, const std::string& extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " + extra + ">" + xml_escape(s) +
         "</text>\n";
}

std::string polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill) {
  std::string out = "<polygon points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(pts[i].first) + "," + num(pts[i].second);
  }
  return out + "\" fill=\"" + fill + "\" stroke=\"#333333\" stroke-width=\"0.3\"/>\n";
}

void require_labels(const RealMatrix& m, const std::vector<std::string>& labels) {
  require_square(m.cast<Complex>(), "svg plot");
  if (labels.size() != static_cast<std::size_t>(m.rows())) {
    throw DimensionError("svg plot: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(m.rows()) + " rows");
  }
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> basis_labels(std::size_t num_qubits) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < (std::size_t{1} << num_qubits); ++i) out.push_back(bitstring(i, num_qubits));
  return out;
}

std::string hinton_svg(const RealMatrix& m, const std::vector<std::string>& labels,
                       const std::string& title) {
  require_labels(m, labels);
  const auto n = static_cast<std::size_t>(m.rows());
  const double cell = 24.0, left = 48.0, top = 56.0;
  const double width = left + cell * static_cast<double>(n) + 16.0;
  const double height = top + cell * static_cast<double>(n) + 40.0;
  const double peak = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;

  std::ostringstream os;
  os << header(width, height);
  os << text(width / 2, 22, title, "font-size=\"14\" text-anchor=\"middle\"");
  os << rect(left, top, cell * static_cast<double>(n), cell * static_cast<double>(n),
             "fill=\"#eeeeee\" stroke=\"#999999\"");
  for (std::size_t i = 0; i < n; ++i) {
    const double c = static_cast<double>(i) * cell + cell / 2;
    os << text(left - 4, top + c + 3, labels[i], "font-size=\"8\" text-anchor=\"end\"");
    os << text(left + c, top - 6, labels[i], "font-size=\"8\" text-anchor=\"middle\"");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (peak <= 0.0 || v == 0.0) continue;
      const double side = 0.9 * cell * std::sqrt(std::abs(v) / peak);
      const double x = left + static_cast<double>(j) * cell + (cell - side) / 2;
      const double y = top + static_cast<double>(i) * cell + (cell - side) / 2;
      os << rect(x, y, side, side,
                 v > 0 ? "fill=\"#1f3b73\""
                       : "fill=\"#ffffff\" stroke=\"#b2182b\" stroke-width=\"1.5\"");
    }
  }
  const double ly = top + cell * static_cast<double>(n) + 24;
  os << rect(left, ly - 9, 10, 10, "fill=\"#1f3b73\"");
  os << text(left + 14, ly, "positive", "font-size=\"10\"");
  os << rect(left + 80, ly - 9, 10, 10, "fill=\"#ffffff\" stroke=\"#b2182b\" stroke-width=\"1.5\"");
  os << text(left + 94, ly, "negative", "font-size=\"10\"");
  os << text(left + 160, ly, "max |v| = " + num(peak), "font-size=\"10\"");
  os << "</svg>\n";
  return os.str();
}

std::string city_svg(const RealMatrix& m, const std::vector<std::string>& labels,
                     const std::string& title) {
  require_labels(m, labels);
  const auto n = static_cast<std::size_t>(m.rows());
  const double nd = static_cast<double>(n);
  const double cell = 22.0, bar = 0.75 * cell;
  const double dx = 0.5 * cell, dy = 0.35 * cell;  // one row deeper
  const double bar_dx = 0.75 * dx, bar_dy = 0.75 * dy;
  const double peak = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  const double zscale = peak > 0 ? 140.0 / peak : 0.0;
  const double left = 56.0;
  const double base_y = 60.0 + 140.0 + nd * dy;  // floor of the front row
  const double width = left + nd * cell + nd * dx + 60.0;
  const double height = base_y + 140.0 + 48.0;

  // floor point for row i, column j; row 0 sits at the back
  auto floor_at = [&](double i, double j) {
    const double depth = nd - i;
    return std::pair<double, double>{left + j * cell + depth * dx, base_y - depth * dy};
  };

  std::ostringstream os;
  os << header(width, height);
  os << text(width / 2, 22, title, "font-size=\"14\" text-anchor=\"middle\"");
  os << polygon({floor_at(0, 0), floor_at(0, nd), floor_at(nd, nd), floor_at(nd, 0)}, "#f4f4f4");
  // column labels go below the deepest negative bar
  const double sink = m.size() ? std::max(0.0, -m.minCoeff()) * zscale : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [cx, cy] = floor_at(nd, static_cast<double>(k) + 0.5);
    os << text(cx, cy + sink + 12, labels[k], "font-size=\"7\" text-anchor=\"middle\"");
    const auto [rx, ry] = floor_at(static_cast<double>(k) + 0.5, nd);
    os << text(rx + bar_dx + 8, ry + 3, labels[k], "font-size=\"7\"");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::abs(v) * zscale < 0.05) continue;
      const auto [fx, fy] = floor_at(static_cast<double>(i) + 1.0 - 0.125, static_cast<double>(j) + 0.125);
      const double h = v * zscale;
      const double y_lo = fy - std::max(h, 0.0), y_hi = fy - std::min(h, 0.0);
      const bool pos = v > 0;
      const std::string front = pos ? "#3182bd" : "#de2d26";
      const std::string lid = pos ? "#9ecae1" : "#fc9272";
      const std::string side = pos ? "#08519c" : "#a50f15";
      os << polygon({{fx, y_lo}, {fx + bar, y_lo}, {fx + bar, y_hi}, {fx, y_hi}}, front);
      os << polygon({{fx + bar, y_lo}, {fx + bar + bar_dx, y_lo - bar_dy},
                     {fx + bar + bar_dx, y_hi - bar_dy}, {fx + bar, y_hi}}, side);
      os << polygon({{fx, y_lo}, {fx + bar, y_lo}, {fx + bar + bar_dx, y_lo - bar_dy},
                     {fx + bar_dx, y_lo - bar_dy}}, lid);
    }
  }
  const double sx = 16.0;
  os << "<line x1=\"" << num(sx) << "\" y1=\"" << num(base_y) << "\" x2=\"" << num(sx)
     << "\" y2=\"" << num(base_y - 140.0) << "\" stroke=\"#333333\"/>\n";
  os << text(sx + 2, base_y - 142.0, num(peak), "font-size=\"9\"");
  os << text(sx + 2, base_y + 10, "0", "font-size=\"9\"");
  os << "</svg>\n";
  return os.str();
}

std::string counts_svg(const CountsTable& counts, std::size_t num_qubits,
                       const std::string& title) {
  const std::vector<double> freq = counts.frequencies(num_qubits);
  const double n = static_cast<double>(freq.size());
  const double slot = 56.0, left = 56.0, top = 48.0, plot_h = 220.0;
  const double width = left + slot * n + 24.0, height = top + plot_h + 56.0;
  const double base = top + plot_h;

  std::ostringstream os;
  os << header(width, height);
  os << text(width / 2, 22, title, "font-size=\"14\" text-anchor=\"middle\"");
  for (int t = 0; t <= 4; ++t) {
    const double f = 0.25 * t, y = base - f * plot_h;
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + slot * n)
       << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    os << text(left - 6, y + 3, num(f), "font-size=\"9\" text-anchor=\"end\"");
  }
  for (std::size_t i = 0; i < freq.size(); ++i) {
    const std::string bits = bitstring(i, num_qubits);
    const double x = left + static_cast<double>(i) * slot;
    const double h = freq[i] * plot_h;
    os << rect(x + 10, base - h, slot - 20, h, "fill=\"#3182bd\"");
    os << text(x + slot / 2, base - h - 4, std::to_string(counts.count(bits)),
               "font-size=\"9\" text-anchor=\"middle\"");
    os << text(x + slot / 2, base + 14, bits, "font-size=\"10\" text-anchor=\"middle\"");
  }
  os << "<line x1=\"" << num(left) << "\" y1=\"" << num(base) << "\" x2=\"" << num(left + slot * n)
     << "\" y2=\"" << num(base) << "\" stroke=\"#333333\"/>\n";
  os << text(width / 2, height - 12, std::to_string(counts.shots) + " shots",
             "font-size=\"10\" text-anchor=\"middle\"");
  os << "</svg>\n";
  return os.str();
}

}  // namespace choiqpt
