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

// The geodesic cone C = p x Gamma over a graph and its development C^ into
// the two-dimensional model of the same curvature.
//
// The development keeps the distance r(s) from the apex and the arclength of
// every edge, so its metric is ds^2 = dr^2 + f(r)^2 dtheta^2 with
//
//   theta'(s) = sqrt(1 - r'(s)^2) / f(r(s)).
//
// Curve-versus-conormal curvatures are always reported as k . nu with nu the
// outward conormal, i.e. tangent to the cone, orthogonal to the curve and
// pointing away from the apex.  The inward geodesic curvature is -(k . nu).

#ifndef SOAPCERT_CONE_H_
#define SOAPCERT_CONE_H_

#include <optional>
#include <string>
#include <vector>

#include "soapcert/graph.h"
#include "soapcert/space_form.h"

namespace soapcert {

struct RadialProfile {
  // dist(p, gamma(s_i)).
  std::vector<double> r;
  // dr/ds = <u, T>.
  std::vector<double> rprime;
  // Unit radial direction at gamma(s_i), pointing away from the apex.
  std::vector<TangentVector> u;
  // Unit curve tangent at gamma(s_i).
  std::vector<TangentVector> tangent;
};

// Throws NumericalError if the apex lies on the edge (distance below 1e-6)
// or, on the sphere, within 1e-6 of the conjugate radius pi/b.
RadialProfile ComputeRadialProfile(const SpaceForm& space, const Point& apex,
                                   const EdgeCurve& edge);

struct DevelopedEdge {
  std::string id;
  std::vector<double> s;
  std::vector<double> r;
  std::vector<double> rprime;
  // Swept angle, theta[0] == 0, nondecreasing.
  std::vector<double> theta;
  // Developed curvature vector dotted with the outward conormal.  Interior
  // values come from finite differences of the developed curve; the two end
  // values are linear extrapolations.
  std::vector<double> khat_nu;
};

struct ConeDevelopment {
  Point apex;
  std::vector<DevelopedEdge> per_edge;
  // Total swept angle / 2 pi.
  double hat_density = 0.0;
  double hat_area = 0.0;
};

ConeDevelopment DevelopCone(const EmbeddedGraph& graph, const Point& apex);

// Point at polar coordinates (r, theta) about the canonical origin of a
// two-dimensional model, with the radial and angular unit vectors there.
struct PolarFrame {
  Point point;
  Vec radial;
  Vec angular;
};
PolarFrame PolarPoint(const SpaceForm& plane, double r, double theta);

// Theta(C, p): length of the spherical image of the apex directions / 2 pi.
double AmbientConeDensity(const EmbeddedGraph& graph, const Point& apex);

// Area of the ruled cone swept by the geodesics from the apex, integrated
// directly on the patch G(t, s) = exp_p(t u0(s)) with s running along the
// geodesic chords between consecutive samples: two Gauss nodes per chord,
// exact derivatives of the apex direction, and F(r) along each ruling.
double AmbientConeArea(const EmbeddedGraph& graph, const Point& apex);

// k . nu_C at the interior samples of the edge, with k the geodesic curvature
// vector in M and nu_C the outward conormal of the ambient cone.  Samples
// where the curve runs radially carry no value.
std::vector<std::optional<double>> ConeConormalCurvature(
    const SpaceForm& space, const Point& apex, const EdgeCurve& edge);

// pi/2 - angle(T_k(q), direction from q to the apex), summed over the edge
// ends at one vertex.
double VertexApexTerm(const EmbeddedGraph& graph, const Point& apex,
                      std::size_t vertex);

struct GaussBonnetTerms {
  // 2 pi Theta(C^, p).
  double density_term = 0.0;
  // K^ Area(C^), K^ the signed model curvature.
  double area_term = 0.0;
  // sum over edges of int khat_nu ds.
  double boundary_term = 0.0;
  // sum over vertices of VertexApexTerm.
  double vertex_term = 0.0;
  // |density - area + boundary - vertex|.
  double residual = 0.0;
};

GaussBonnetTerms GaussBonnet(const EmbeddedGraph& graph, const Point& apex);
GaussBonnetTerms GaussBonnet(const EmbeddedGraph& graph,
                             const ConeDevelopment& dev);

inline double GaussBonnetResidual(const EmbeddedGraph& graph,
                                  const Point& apex) {
  return GaussBonnet(graph, apex).residual;
}

}  // namespace soapcert

#endif  // SOAPCERT_CONE_H_
