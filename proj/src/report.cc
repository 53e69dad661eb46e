// Copyright 2026 The soapcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "soapcert/report.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace soapcert {
namespace {

constexpr double kSvgSize = 512.0;
constexpr double kSvgMargin = 16.0;

// Radius of the developed point in the drawing plane.
double PlotRadius(const SpaceForm& space, double r) {
  switch (space.model()) {
    case Model::kHyperbolic:
      return std::tanh(0.5 * space.curv() * r);
    case Model::kSpherical:
      return std::sin(space.curv() * r) / space.curv();
    case Model::kFlat:
      break;
  }
  return r;
}

}  // namespace

std::string FormatExact(double x) { return fmt::format("{:.17g}", x); }

std::string FormatNumber(double x) { return fmt::format("{:.12g}", x); }

std::string FormatCoords(const Vec& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatNumber(v[i]);
  }
  return out;
}

void TextReport::Indent() { text_.append(2 * depth_, ' '); }

void TextReport::Section(std::string_view name) {
  Indent();
  text_ += fmt::format("{}:\n", name);
  ++depth_;
}

void TextReport::EndSection() {
  if (depth_ > 0) --depth_;
}

void TextReport::Value(std::string_view key, std::string_view value) {
  Indent();
  text_ += fmt::format("{}: {}\n", key, value);
}

void TextReport::Number(std::string_view key, double value) {
  Value(key, FormatNumber(value));
}

void TextReport::Angle(std::string_view key, double radians) {
  Value(key, fmt::format("{} ({:.4f} pi)", FormatNumber(radians),
                         radians / std::numbers::pi));
}

void AppendTc(TextReport& report, const TCReport& tc) {
  report.Section("tc");
  report.Section("edges");
  for (const auto& e : tc.per_edge) report.Angle(e.id, e.integral);
  report.EndSection();
  report.Section("vertices");
  for (const auto& v : tc.per_vertex) {
    report.Section(v.id);
    report.Angle("tc", v.tc);
    report.Value("argmax_dir", FormatCoords(v.argmax_dir.vec));
    report.EndSection();
  }
  report.EndSection();
  report.Angle("total", tc.total);
  report.EndSection();
}

void AppendGaussBonnet(TextReport& report, const GaussBonnetTerms& gb) {
  report.Section("gauss_bonnet");
  report.Angle("density_term", gb.density_term);
  report.Number("area_term", gb.area_term);
  report.Number("boundary_term", gb.boundary_term);
  report.Angle("vertex_term", gb.vertex_term);
  report.Number("residual", gb.residual);
  report.EndSection();
}

void AppendCertify(TextReport& report, const CertifyResult& result) {
  report.Angle("tc_total", result.tc.total);
  report.Section("checks");
  for (const ThresholdCheck& c : result.checks) {
    report.Section(VerdictName(c.candidate));
    report.Angle("threshold", c.threshold);
    report.Number("cone_area_term", c.cone_area_term);
    report.Number("margin", c.margin);
    report.Value("inequality", c.strict_inequality ? "strict" : "non-strict");
    report.Value("qualifies", c.qualifies ? "yes" : "no");
    report.Value("notes", c.notes);
    report.EndSection();
  }
  report.EndSection();
  report.Section("certificates");
  for (const Certificate& c : result.certificates) {
    report.Section(VerdictName(c.verdict));
    report.Angle("tc_total", c.tc_total);
    report.Angle("threshold", c.threshold);
    report.Number("cone_area_term", c.cone_area_term);
    report.Number("margin", c.margin);
    report.Value("mode", CertModeName(c.mode));
    report.Value("extremal_apex", c.extremal_apex
                                      ? FormatCoords(c.extremal_apex->coords)
                                      : std::string("absent"));
    report.Value("notes", c.notes);
    report.EndSection();
  }
  report.EndSection();
}

std::string DevelopmentCsv(const ConeDevelopment& dev) {
  std::string out = "edge_id,s,r,theta,khat_nu\n";
  for (const DevelopedEdge& e : dev.per_edge) {
    for (std::size_t i = 0; i < e.s.size(); ++i) {
      out += fmt::format("{},{},{},{},{}\n", e.id, FormatExact(e.s[i]),
                         FormatExact(e.r[i]), FormatExact(e.theta[i]),
                         FormatExact(e.khat_nu[i]));
    }
  }
  return out;
}

std::string DevelopmentSvg(const SpaceForm& space,
                           const ConeDevelopment& dev) {
  // Edges are laid out one after another in angle.
  std::vector<std::vector<std::pair<double, double>>> paths;
  double offset = 0.0;
  double extent = 0.0;
  for (const DevelopedEdge& e : dev.per_edge) {
    std::vector<std::pair<double, double>> path;
    for (std::size_t i = 0; i < e.r.size(); ++i) {
      const double rho = PlotRadius(space, e.r[i]);
      const double phi = offset + e.theta[i];
      path.emplace_back(rho * std::cos(phi), rho * std::sin(phi));
      extent = std::max(extent, std::abs(rho));
    }
    offset += e.theta.back();
    paths.push_back(std::move(path));
  }
  if (space.model() == Model::kHyperbolic) extent = 1.0;
  if (!(extent > 0)) extent = 1.0;
  const double half = 0.5 * kSvgSize;
  const double scale = (half - kSvgMargin) / extent;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" "
      "height=\"{0:.0f}\" viewBox=\"0 0 {0:.0f} {0:.0f}\">\n",
      kSvgSize);
  if (space.model() != Model::kFlat) {
    out += fmt::format(
        "  <circle cx=\"{0:.3f}\" cy=\"{0:.3f}\" r=\"{1:.3f}\" fill=\"none\" "
        "stroke=\"#bbbbbb\"/>\n",
        half,
        scale * (space.model() == Model::kHyperbolic ? 1.0
                                                      : 1.0 / space.curv()));
  }
  for (std::size_t k = 0; k < paths.size(); ++k) {
    out += fmt::format("  <polyline id=\"{}\" fill=\"none\" stroke=\"black\" "
                       "points=\"",
                       dev.per_edge[k].id);
    for (std::size_t i = 0; i < paths[k].size(); ++i) {
      if (i > 0) out += ' ';
      out += fmt::format("{:.4f},{:.4f}", half + scale * paths[k][i].first,
                         half - scale * paths[k][i].second);
    }
    out += "\"/>\n";
  }
  out += fmt::format(
      "  <circle id=\"apex\" cx=\"{0:.3f}\" cy=\"{0:.3f}\" r=\"3\" "
      "fill=\"red\"/>\n",
      half);
  out += "</svg>\n";
  return out;
}

}  // namespace soapcert
