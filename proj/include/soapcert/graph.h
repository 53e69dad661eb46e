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

// Embedded graphs: a finite union of arcs on a model manifold, meeting at
// vertices of valence at least two.  Each arc is stored as a geodesic
// polyline, i.e. consecutive samples are joined by model geodesics, and is
// parametrized by the cumulative geodesic chord length.

#ifndef SOAPCERT_GRAPH_H_
#define SOAPCERT_GRAPH_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soapcert/space_form.h"

namespace soapcert {

inline constexpr double kDefaultManifoldTolerance = 1e-6;
inline constexpr int kMinEdgeSamples = 8;

struct Vertex {
  std::string id;
  Point point;
};

struct EdgeCurve {
  std::string id;
  // Vertex indices of the first and last sample.
  std::array<std::size_t, 2> endpoints;
  std::vector<Point> samples;
  // Arclength at each sample; s[0] == 0.
  std::vector<double> s;

  double length() const { return s.back(); }
  std::size_t size() const { return samples.size(); }
};

// Raw input, before validation.
struct VertexSpec {
  std::string id;
  Vec coords;
};

struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
  std::vector<Vec> samples;
};

// One end of an edge: end 0 is the first sample, end 1 the last.
struct EdgeEnd {
  std::size_t edge;
  int end;
};

// A directed traversal of an edge in a closed walk.
struct Traversal {
  std::size_t edge;
  bool forward;

  bool operator==(const Traversal&) const = default;
};

class EmbeddedGraph {
 public:
  // Validates the input, projects every point onto the model manifold and
  // parametrizes each edge by arclength.  Edges with fewer than
  // kMinEdgeSamples samples are refined by geodesic subdivision.  Throws
  // ValidationError on any violated invariant.
  static EmbeddedGraph Create(const SpaceForm& space,
                              std::vector<VertexSpec> vertices,
                              std::vector<EdgeSpec> edges,
                              double tolerance = kDefaultManifoldTolerance);

  const SpaceForm& space() const { return space_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<EdgeCurve>& edges() const { return edges_; }

  // Throws ValidationError for unknown ids.
  std::size_t VertexIndex(std::string_view id) const;
  std::size_t EdgeIndex(std::string_view id) const;

  int Valence(std::size_t vertex) const;
  // Edge ends incident to a vertex, in edge order; a loop contributes two.
  std::vector<EdgeEnd> IncidentEnds(std::size_t vertex) const;
  double TotalLength() const;
  // Connected components as sorted lists of vertex indices.
  std::vector<std::vector<std::size_t>> Components() const;
  // Connected, and every vertex has valence exactly two.
  bool IsSimpleClosedCurve() const;
  // Every vertex point plus the interior samples of every edge, each once.
  std::vector<Point> DistinctSamples() const;

  // Re-samples every edge at geodesic chord spacing close to h, keeping the
  // endpoints fixed.  Each edge gets max(kMinEdgeSamples - 1,
  // round(length / h)) equal-arclength segments.  The new samples keep
  // their arclength along the source polyline as s, so edge lengths are
  // preserved.  Throws ValidationError if h <= 0 or h exceeds the shortest
  // edge.
  EmbeddedGraph Resampled(double h) const;

 private:
  EmbeddedGraph(SpaceForm space, std::vector<Vertex> vertices,
                std::vector<EdgeCurve> edges)
      : space_(space),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)) {}

  SpaceForm space_;
  std::vector<Vertex> vertices_;
  std::vector<EdgeCurve> edges_;
};

// Graph document (JSON):
//   { "space": {"model": "flat"|"hyperbolic"|"spherical", "dim": n,
//               "curv": c},
//     "tolerance": 1e-6,                       (optional)
//     "vertices": [{"id": ..., "coords": [...]}, ...],
//     "edges": [{"id": ..., "endpoints": [from, to],
//                "samples": [[...], ...]}, ...] }
// Ids may be strings or integers.  Throws ValidationError.
EmbeddedGraph LoadGraph(std::string_view json_text);
EmbeddedGraph LoadGraphFile(const std::filesystem::path& path);

inline EmbeddedGraph ResampleArclength(const EmbeddedGraph& graph, double h) {
  return graph.Resampled(h);
}

// Unit tangent at one end of an edge, pointing into the edge, from a
// five-point one-sided difference projected onto the tangent space.
TangentVector EndTangent(const SpaceForm& space, const EdgeCurve& edge,
                         int end);

// Inward unit tangents T_k(q) of every edge end at the vertex, in the order
// of EmbeddedGraph::IncidentEnds.
std::vector<TangentVector> VertexStar(const EmbeddedGraph& graph,
                                      std::size_t vertex);

// A closed walk traversing every edge exactly twice (an Euler circuit of the
// doubled multigraph).  Throws ValidationError for disconnected graphs.
std::vector<Traversal> EulerDoubleCircuit(const EmbeddedGraph& graph);
std::vector<Traversal> EulerDoubleCircuit(
    std::size_t num_vertices,
    std::span<const std::array<std::size_t, 2>> endpoints);

}  // namespace soapcert

#endif  // SOAPCERT_GRAPH_H_
