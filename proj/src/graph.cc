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

#include "soapcert/graph.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "soapcert/errors.h"

namespace soapcert {
namespace {

constexpr double kEndpointTolerance = 1e-8;
constexpr double kMinGap = 1e-12;

Point GeodesicLerp(const SpaceForm& space, const Point& a, const Point& b,
                   double t) {
  if (t <= 0.0) return a;
  if (t >= 1.0) return b;
  TangentVector v = space.Log(a, b);
  v.vec *= t;
  return space.Exp(v);
}

std::vector<double> ChordArclength(const SpaceForm& space,
                                   const std::vector<Point>& samples,
                                   std::string_view edge_id) {
  std::vector<double> s(samples.size(), 0.0);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double d = space.Dist(samples[i - 1], samples[i]);
    if (d < kMinGap) {
      throw ValidationError(fmt::format(
          "edge '{}': samples {} and {} coincide", edge_id, i - 1, i));
    }
    s[i] = s[i - 1] + d;
  }
  return s;
}

}  // namespace

EmbeddedGraph EmbeddedGraph::Create(const SpaceForm& space,
                                    std::vector<VertexSpec> vertex_specs,
                                    std::vector<EdgeSpec> edge_specs,
                                    double tolerance) {
  if (!(tolerance > 0)) throw ValidationError("tolerance must be positive");
  if (vertex_specs.empty()) throw ValidationError("graph has no vertices");
  if (edge_specs.empty()) throw ValidationError("graph has no edges");

  auto on_manifold = [&](const Vec& x, std::string_view what) {
    if (x.size() != space.embedding_dim()) {
      throw ValidationError(fmt::format(
          "{}: expected {} coordinates, got {}", what, space.embedding_dim(),
          x.size()));
    }
    if (!x.allFinite()) {
      throw ValidationError(fmt::format("{}: non-finite coordinates", what));
    }
    const double residual = space.Residual(x);
    if (residual > tolerance) {
      throw ValidationError(fmt::format(
          "{}: off the model manifold by {:.3g} (tolerance {:.3g})", what,
          residual, tolerance));
    }
    return space.Project(x);
  };

  std::vector<Vertex> vertices;
  std::map<std::string, std::size_t, std::less<>> vertex_index;
  for (auto& spec : vertex_specs) {
    if (!vertex_index.emplace(spec.id, vertices.size()).second) {
      throw ValidationError(fmt::format("duplicate vertex id '{}'", spec.id));
    }
    Point p = on_manifold(spec.coords, fmt::format("vertex '{}'", spec.id));
    vertices.push_back({std::move(spec.id), std::move(p)});
  }

  std::vector<EdgeCurve> edges;
  std::set<std::string, std::less<>> edge_ids;
  for (auto& spec : edge_specs) {
    if (!edge_ids.insert(spec.id).second) {
      throw ValidationError(fmt::format("duplicate edge id '{}'", spec.id));
    }
    auto lookup = [&](const std::string& id) {
      auto it = vertex_index.find(id);
      if (it == vertex_index.end()) {
        throw ValidationError(fmt::format(
            "edge '{}' references unknown vertex '{}'", spec.id, id));
      }
      return it->second;
    };
    EdgeCurve edge;
    edge.id = spec.id;
    edge.endpoints = {lookup(spec.from), lookup(spec.to)};
    if (spec.samples.size() < 2) {
      throw ValidationError(
          fmt::format("edge '{}' needs at least two samples", spec.id));
    }
    std::vector<Point> pts;
    pts.reserve(spec.samples.size());
    for (std::size_t i = 0; i < spec.samples.size(); ++i) {
      pts.push_back(on_manifold(spec.samples[i],
                                fmt::format("edge '{}' sample {}", spec.id, i)));
    }
    for (int end = 0; end < 2; ++end) {
      const Point& v = vertices[edge.endpoints[end]].point;
      Point& sample = end == 0 ? pts.front() : pts.back();
      if ((sample.coords - v.coords).norm() > kEndpointTolerance) {
        throw ValidationError(fmt::format(
            "edge '{}': {} sample does not coincide with vertex '{}'", spec.id,
            end == 0 ? "first" : "last", vertices[edge.endpoints[end]].id));
      }
      sample = v;
    }
    // Check gaps before subdividing so coincident samples are reported.
    ChordArclength(space, pts, spec.id);
    if (pts.size() < static_cast<std::size_t>(kMinEdgeSamples)) {
      const std::size_t segments = pts.size() - 1;
      const std::size_t parts =
          (kMinEdgeSamples - 1 + segments - 1) / segments;
      std::vector<Point> refined;
      for (std::size_t i = 0; i < segments; ++i) {
        for (std::size_t k = 0; k < parts; ++k) {
          refined.push_back(GeodesicLerp(space, pts[i], pts[i + 1],
                                         static_cast<double>(k) / parts));
        }
      }
      refined.push_back(pts.back());
      pts = std::move(refined);
    }
    edge.s = ChordArclength(space, pts, spec.id);
    edge.samples = std::move(pts);
    edges.push_back(std::move(edge));
  }

  EmbeddedGraph graph(space, std::move(vertices), std::move(edges));
  for (std::size_t v = 0; v < graph.vertices_.size(); ++v) {
    const int valence = graph.Valence(v);
    if (valence < 2) {
      throw ValidationError(fmt::format(
          "not a graph in the required sense: vertex '{}' has valence {}, "
          "every vertex needs valence at least 2",
          graph.vertices_[v].id, valence));
    }
  }

  if (space.model() == Model::kSpherical) {
    // Pairwise distances < pi/b  <=>  b^2 <x,y> > -1 for every pair.
    const std::vector<Point> pts = graph.DistinctSamples();
    const double b2 = space.curv() * space.curv();
    // Points in one open hemisphere are pairwise closer than pi/b.
    Vec mean = space.Zero();
    for (const Point& x : pts) mean += x.coords;
    bool hemisphere = mean.norm() > 0;
    for (const Point& x : pts) {
      if (!hemisphere) break;
      hemisphere = x.coords.dot(mean) > 0;
    }
    for (std::size_t i = 0; !hemisphere && i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (b2 * pts[i].coords.dot(pts[j].coords) <= -1.0 + 1e-12) {
          throw ValidationError(
              "spherical diameter bound violated: two graph points are "
              "antipodal");
        }
      }
    }
  }
  return graph;
}

std::size_t EmbeddedGraph::VertexIndex(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return i;
  }
  throw ValidationError(fmt::format("unknown vertex '{}'", id));
}

std::size_t EmbeddedGraph::EdgeIndex(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == id) return i;
  }
  throw ValidationError(fmt::format("unknown edge '{}'", id));
}

int EmbeddedGraph::Valence(std::size_t vertex) const {
  int valence = 0;
  for (const EdgeCurve& e : edges_) {
    valence += (e.endpoints[0] == vertex) + (e.endpoints[1] == vertex);
  }
  return valence;
}

std::vector<EdgeEnd> EmbeddedGraph::IncidentEnds(std::size_t vertex) const {
  std::vector<EdgeEnd> ends;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (int end = 0; end < 2; ++end) {
      if (edges_[i].endpoints[end] == vertex) ends.push_back({i, end});
    }
  }
  return ends;
}

double EmbeddedGraph::TotalLength() const {
  double total = 0.0;
  for (const EdgeCurve& e : edges_) total += e.length();
  return total;
}

std::vector<std::vector<std::size_t>> EmbeddedGraph::Components() const {
  const std::size_t n = vertices_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const EdgeCurve& e : edges_) {
    adj[e.endpoints[0]].push_back(e.endpoints[1]);
    adj[e.endpoints[1]].push_back(e.endpoints[0]);
  }
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool EmbeddedGraph::IsSimpleClosedCurve() const {
  if (Components().size() != 1) return false;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (Valence(v) != 2) return false;
  }
  return true;
}

std::vector<Point> EmbeddedGraph::DistinctSamples() const {
  std::vector<Point> pts;
  for (const Vertex& v : vertices_) pts.push_back(v.point);
  for (const EdgeCurve& e : edges_) {
    for (std::size_t i = 1; i + 1 < e.samples.size(); ++i) {
      pts.push_back(e.samples[i]);
    }
  }
  return pts;
}

EmbeddedGraph EmbeddedGraph::Resampled(double h) const {
  if (!(h > 0)) throw ValidationError("resampling spacing must be positive");
  double shortest = edges_.front().length();
  for (const EdgeCurve& e : edges_) shortest = std::min(shortest, e.length());
  if (h > shortest) {
    throw ValidationError(fmt::format(
        "resampling spacing {} exceeds the shortest edge length {}", h,
        shortest));
  }
  std::vector<EdgeCurve> edges;
  edges.reserve(edges_.size());
  for (const EdgeCurve& e : edges_) {
    const double length = e.length();
    const auto segments = static_cast<std::size_t>(
        std::max<double>(kMinEdgeSamples - 1, std::round(length / h)));
    EdgeCurve out;
    out.id = e.id;
    out.endpoints = e.endpoints;
    out.samples.reserve(segments + 1);
    out.s.reserve(segments + 1);
    out.samples.push_back(e.samples.front());
    out.s.push_back(0.0);
    std::size_t seg = 0;
    for (std::size_t j = 1; j < segments; ++j) {
      const double target = length * static_cast<double>(j) /
                            static_cast<double>(segments);
      while (seg + 2 < e.s.size() && e.s[seg + 1] <= target) ++seg;
      const double t = (target - e.s[seg]) / (e.s[seg + 1] - e.s[seg]);
      out.samples.push_back(
          GeodesicLerp(space_, e.samples[seg], e.samples[seg + 1], t));
      // Keep the source arclength; new chords are shorter by O(h^2).
      out.s.push_back(target);
    }
    out.samples.push_back(e.samples.back());
    out.s.push_back(length);
    edges.push_back(std::move(out));
  }
  return EmbeddedGraph(space_, vertices_, std::move(edges));
}

TangentVector EndTangent(const SpaceForm& space, const EdgeCurve& edge,
                         int end) {
  const std::size_t n = edge.samples.size();
  if (n < 3) {
    throw ValidationError(
        fmt::format("edge '{}' has fewer than three samples", edge.id));
  }
  // Derivative at the end of the polynomial through the first (up to) five
  // samples, in the arclength parameter.
  constexpr std::size_t kStencil = 5;
  const std::size_t m = std::min(n, kStencil);
  std::array<std::size_t, kStencil> idx{};
  std::array<double, kStencil> t{};
  for (std::size_t j = 0; j < m; ++j) {
    idx[j] = end == 0 ? j : n - 1 - j;
    t[j] = std::abs(edge.s[idx[j]] - edge.s[idx[0]]);
    if (j > 0 && !(t[j] > t[j - 1])) {
      throw NumericalError(
          fmt::format("edge '{}': degenerate samples at an end", edge.id));
    }
  }
  Vec d = space.Zero();
  for (std::size_t j = 0; j < m; ++j) {
    double w = 0.0;
    if (j == 0) {
      for (std::size_t k = 1; k < m; ++k) w -= 1.0 / t[k];
    } else {
      w = 1.0 / t[j];
      for (std::size_t k = 1; k < m; ++k) {
        if (k != j) w *= -t[k] / (t[j] - t[k]);
      }
    }
    d += w * edge.samples[idx[j]].coords;
  }
  const std::size_t i0 = idx[0];
  const Point& base = edge.samples[i0];
  d = space.ToTangent(base, d);
  const double norm = space.Norm(base, d);
  if (!(norm > 0)) {
    throw NumericalError(
        fmt::format("edge '{}': degenerate tangent at an end", edge.id));
  }
  return {base, d / norm};
}

std::vector<TangentVector> VertexStar(const EmbeddedGraph& graph,
                                      std::size_t vertex) {
  if (vertex >= graph.vertices().size()) {
    throw ValidationError("vertex index out of range");
  }
  std::vector<TangentVector> star;
  for (const EdgeEnd& end : graph.IncidentEnds(vertex)) {
    star.push_back(
        EndTangent(graph.space(), graph.edges()[end.edge], end.end));
  }
  return star;
}

std::vector<Traversal> EulerDoubleCircuit(const EmbeddedGraph& graph) {
  const auto components = graph.Components();
  if (components.size() > 1) {
    std::string listing;
    for (const auto& comp : components) {
      listing += " {";
      for (std::size_t k = 0; k < comp.size(); ++k) {
        if (k) listing += ", ";
        listing += graph.vertices()[comp[k]].id;
      }
      listing += "}";
    }
    throw ValidationError(fmt::format(
        "graph is disconnected; components:{}", listing));
  }
  std::vector<std::array<std::size_t, 2>> endpoints;
  for (const EdgeCurve& e : graph.edges()) endpoints.push_back(e.endpoints);
  return EulerDoubleCircuit(graph.vertices().size(), endpoints);
}

std::vector<Traversal> EulerDoubleCircuit(
    std::size_t num_vertices,
    std::span<const std::array<std::size_t, 2>> endpoints) {
  if (endpoints.empty()) return {};
  // Copy 2*e and 2*e+1 of edge e are the two sheets of the double cover.
  std::vector<std::vector<std::size_t>> incident(num_vertices);
  for (std::size_t e = 0; e < endpoints.size(); ++e) {
    const auto [u, v] = endpoints[e];
    if (u >= num_vertices || v >= num_vertices) {
      throw ValidationError("edge endpoint out of range");
    }
    for (std::size_t copy = 2 * e; copy < 2 * e + 2; ++copy) {
      incident[u].push_back(copy);
      incident[v].push_back(copy);
    }
  }

  // Connectivity over vertices that carry edges.
  {
    std::vector<int> seen(num_vertices, 0);
    std::vector<std::size_t> stack{endpoints[0][0]};
    seen[endpoints[0][0]] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t copy : incident[v]) {
        const auto [a, b] = endpoints[copy / 2];
        const std::size_t w = a == v ? b : a;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::string missing;
    for (std::size_t v = 0; v < num_vertices; ++v) {
      if (!seen[v]) missing += fmt::format(" {}", v);
    }
    if (!missing.empty()) {
      throw ValidationError(fmt::format(
          "graph is disconnected; vertices unreachable from {}:{}",
          endpoints[0][0], missing));
    }
  }

  // Hierholzer's algorithm; every vertex of the double cover has even degree.
  std::vector<char> used(2 * endpoints.size(), 0);
  std::vector<std::size_t> cursor(num_vertices, 0);
  struct Frame {
    std::size_t vertex;
    Traversal via;
    bool has_via;
  };
  std::vector<Frame> stack{{endpoints[0][0], {0, true}, false}};
  std::vector<Traversal> circuit;
  circuit.reserve(used.size());
  while (!stack.empty()) {
    const std::size_t v = stack.back().vertex;
    auto& list = incident[v];
    while (cursor[v] < list.size() && used[list[cursor[v]]]) ++cursor[v];
    if (cursor[v] < list.size()) {
      const std::size_t copy = list[cursor[v]];
      used[copy] = 1;
      const std::size_t e = copy / 2;
      const auto [a, b] = endpoints[e];
      const bool forward = a == v;
      stack.push_back({forward ? b : a, {e, forward}, true});
    } else {
      if (stack.back().has_via) circuit.push_back(stack.back().via);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace soapcert
