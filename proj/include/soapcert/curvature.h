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

// Cone total curvature of an embedded graph:
//
//   TC = sum over edges of  int |k| ds   +   sum over vertices of tc(q),
//   tc(q) = max over unit e in T_qM of  sum_k (pi/2 - angle(T_k(q), e)),
//
// where k is the geodesic curvature vector of the edge in M and T_k(q) are
// the inward unit tangents of the edges at q.

#ifndef SOAPCERT_CURVATURE_H_
#define SOAPCERT_CURVATURE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "soapcert/graph.h"
#include "soapcert/space_form.h"

namespace soapcert {

struct CurvatureSample {
  double s;
  TangentVector kvec;
  double kmag;
};

// Unit tangent of the edge at sample i: three-point differences (central in
// the interior, one-sided at the ends), projected onto the tangent space.
TangentVector CurveTangent(const SpaceForm& space, const EdgeCurve& edge,
                           std::size_t i);

// Geodesic curvature vector at the interior samples 1..n-2: the embedding
// second difference projected onto T M, minus its component along the unit
// tangent.  Throws ValidationError for edges with fewer than three samples.
std::vector<CurvatureSample> EdgeCurvature(const SpaceForm& space,
                                           const EdgeCurve& edge);

// Composite trapezoid rule over [s.front(), s.back()] for values known at
// the interior samples only; the end values are extrapolated linearly from
// the two nearest interior samples.
double IntegrateInterior(std::span<const double> s,
                         std::span<const double> interior);

// Extends interior-sample values to all samples by linear extrapolation.
std::vector<double> ExtendToEnds(std::span<const double> s,
                                 std::span<const double> interior);

// int |k| ds over the edge, radians.
double EdgeTotalCurvature(const SpaceForm& space, const EdgeCurve& edge);

struct TcOptions {
  std::uint64_t seed = 0;
  int random_starts = 32;
};

struct VertexTc {
  double tc;
  TangentVector argmax_dir;
};

// sum_k (pi/2 - angle(star_k, e)).
double StarObjective(const SpaceForm& space,
                     std::span<const TangentVector> star,
                     const TangentVector& e);

// Maximizes StarObjective over the unit sphere of T_qM by multistart
// projected-gradient ascent.  Starts: every T_k and -T_k, the normalized
// pairwise sums T_i + T_j, and options.random_starts seeded random
// directions.
VertexTc MaximizeStarObjective(const SpaceForm& space,
                               std::span<const TangentVector> star,
                               const TcOptions& options = {});

VertexTc VertexContribution(const EmbeddedGraph& graph, std::size_t vertex,
                            const TcOptions& options = {});

struct TCReport {
  struct EdgeTerm {
    std::string id;
    double integral;
  };
  struct VertexTerm {
    std::string id;
    double tc;
    TangentVector argmax_dir;
  };
  std::vector<EdgeTerm> per_edge;
  std::vector<VertexTerm> per_vertex;
  double total = 0.0;
};

TCReport ConeTotalCurvature(const EmbeddedGraph& graph,
                            const TcOptions& options = {});

}  // namespace soapcert

#endif  // SOAPCERT_CURVATURE_H_
