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

// Density bounds and regularity certificates for stationary surfaces spanning
// a graph, driven by the cone total curvature.
//
// With K the signed model curvature, every strongly stationary surface
// spanning Gamma satisfies, at every point p off Gamma,
//
//   2 pi Theta(Sigma, p) <= TC(Gamma) + K Area(p x Gamma).
//
// Comparing against the densities of the singular minimizing cones gives
// the thresholds checked here:
//
//   verdict               nonpositive curvature      positive curvature
//   EmbeddedOrY           TC <= 3pi    + k^2 A       TC <= 3pi    - b^2 Abar
//   YSingularitiesOnly    TC <= 2pi CT + k^2 A       TC <= 2pi CT - b^2 Abar
//   SimpleCurveEmbedded   TC <= 4pi    + k^2 A       TC <  4pi    - b^2 Abar
//
// with A (Abar) the minimum (maximum) cone area over apices in the convex
// hull of Gamma.  YSingularitiesOnly applies in dimension 3 only;
// SimpleCurveEmbedded requires Gamma to be a simple closed curve.

#ifndef SOAPCERT_CERTIFY_H_
#define SOAPCERT_CERTIFY_H_

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "soapcert/curvature.h"
#include "soapcert/graph.h"
#include "soapcert/space_form.h"

namespace soapcert {

// Apex densities of the Y cone, the T cone, and of a self-intersection.
inline constexpr double kCY = 1.5;
inline const double kCT = 3.0 / std::numbers::pi * std::acos(-1.0 / 3.0);
inline constexpr double kCX = 2.0;

enum class Verdict {
  kEmbeddedOrY,
  kYSingularitiesOnly,
  kSimpleCurveEmbedded,
  kNoCertificate,
};

enum class CertMode { kStrict, kHeuristic };

const char* VerdictName(Verdict verdict);
const char* CertModeName(CertMode mode);

struct Certificate {
  Verdict verdict = Verdict::kNoCertificate;
  double tc_total = 0.0;
  // The constant 3pi, 2pi*CT or 4pi.
  double threshold = 0.0;
  // +kappa^2 A, -b^2 Abar, or 0.
  double cone_area_term = 0.0;
  // threshold + cone_area_term - tc_total.
  double margin = 0.0;
  CertMode mode = CertMode::kStrict;
  std::optional<Point> extremal_apex;
  std::string notes;
};

// Outer approximation of the geodesic convex hull by a geodesic ball.
struct HullApprox {
  // Riemannian center of mass of the graph samples.
  Point center;
  // Largest distance from the center to a sample.
  double radius = 0.0;
  // Apex candidates inside the ball; grid[0] is the center.
  std::vector<Point> grid;
};

// (TC + K * AmbientConeArea(apex)) / 2 pi, an upper bound for the density at
// the apex of any strongly stationary surface spanning the graph.
double DensityBound(const EmbeddedGraph& graph, const Point& apex,
                    const TCReport& tc);

// Throws NumericalError if the center iteration fails to converge, or on
// the sphere if the ball diameter reaches pi/b.
HullApprox BuildHullApprox(const EmbeddedGraph& graph, int grid_n);

enum class Extremum { kMin, kMax };

struct ExtremalArea {
  double value = 0.0;
  Point apex;
};

// Sampled extremum of AmbientConeArea over the hull ball: the best grid
// points (skipping points within 1e-4 of the graph), each refined by a
// Nelder-Mead simplex in normal coordinates.  Near-ties, up to a relative
// 1e-6, are broken toward the ball center.
ExtremalArea ExtremalConeArea(const EmbeddedGraph& graph,
                              const HullApprox& hull, Extremum which);

struct CertifyOptions {
  CertMode mode = CertMode::kStrict;
  bool simple_curve = false;
  int grid_n = 512;
  TcOptions tc;
};

// One threshold comparison, whether or not it qualifies.
struct ThresholdCheck {
  Verdict candidate;
  double threshold = 0.0;
  double cone_area_term = 0.0;
  double margin = 0.0;
  bool strict_inequality = false;
  bool qualifies = false;
  std::string notes;
};

struct CertifyResult {
  TCReport tc;
  std::vector<ThresholdCheck> checks;
  // Qualifying verdicts, strongest first, or a single NoCertificate.
  std::vector<Certificate> certificates;
};

CertifyResult RunCertify(const EmbeddedGraph& graph,
                         const CertifyOptions& options);

inline std::vector<Certificate> Certify(const EmbeddedGraph& graph,
                                        const CertifyOptions& options) {
  return RunCertify(graph, options).certificates;
}

}  // namespace soapcert

#endif  // SOAPCERT_CERTIFY_H_
