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

#include "test_util.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace soapcert::testing {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<VertexSpec> VertexSpecs(const EmbeddedGraph& g) {
  std::vector<VertexSpec> out;
  for (const Vertex& v : g.vertices()) out.push_back({v.id, v.point.coords});
  return out;
}

std::vector<EdgeSpec> EdgeSpecs(const EmbeddedGraph& g) {
  std::vector<EdgeSpec> out;
  for (const EdgeCurve& e : g.edges()) {
    EdgeSpec spec{e.id, g.vertices()[e.endpoints[0]].id,
                  g.vertices()[e.endpoints[1]].id, {}};
    for (const Point& p : e.samples) spec.samples.push_back(p.coords);
    out.push_back(std::move(spec));
  }
  return out;
}

Eigen::MatrixXd RandomOrthogonal(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::VectorXd Vec3(double x, double y, double z) {
  Eigen::VectorXd v(3);
  v << x, y, z;
  return v;
}

}  // namespace

Vec MakeVec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Point FromNormal(const SpaceForm& space, const Eigen::VectorXd& y) {
  const Point origin = space.Origin();
  const std::vector<Vec> basis = space.TangentBasis(origin);
  if (static_cast<std::size_t>(y.size()) != basis.size()) {
    throw std::invalid_argument("normal coordinates have the wrong size");
  }
  Vec v = space.Zero();
  for (std::size_t a = 0; a < basis.size(); ++a) v += y[a] * basis[a];
  return space.Exp(TangentVector{origin, v});
}

std::vector<Vec> SampleNormalCurve(
    const SpaceForm& space,
    const std::function<Eigen::VectorXd(double)>& curve, int n) {
  std::vector<Vec> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    out.push_back(FromNormal(space, curve(static_cast<double>(i) / n)).coords);
  }
  return out;
}

std::vector<Vec> GeodesicSamples(const SpaceForm& space, const Vec& a,
                                 const Vec& b, int n) {
  const Point pa = space.Project(a);
  const Point pb = space.Project(b);
  const TangentVector v = space.Log(pa, pb);
  std::vector<Vec> out;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    out.push_back(space.Exp(TangentVector{pa, t * v.vec}).coords);
  }
  out.front() = pa.coords;
  out.back() = pb.coords;
  return out;
}

EmbeddedGraph OriginCircle(const SpaceForm& space, double r, int n) {
  const int d = space.dim();
  std::vector<Vec> pts = SampleNormalCurve(
      space,
      [&](double t) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
        y[0] = r * std::cos(2 * kPi * t);
        y[1] = r * std::sin(2 * kPi * t);
        return y;
      },
      n);
  pts.back() = pts.front();
  return EmbeddedGraph::Create(space, {{"q", pts.front()}},
                               {{"c", "q", "q", pts}});
}

EmbeddedGraph FlatCircle(double radius, int n, double z) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    pts.push_back(MakeVec({radius * std::cos(t), radius * std::sin(t), z}));
  }
  pts.push_back(pts.front());
  return EmbeddedGraph::Create(SpaceForm::Flat(3), {{"q", pts.front()}},
                               {{"c", "q", "q", pts}});
}

EmbeddedGraph GeodesicPolygon(const SpaceForm& space,
                              const std::vector<Vec>& corners,
                              int n_per_edge) {
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  const std::size_t k = corners.size();
  for (std::size_t i = 0; i < k; ++i) {
    vertices.push_back({"v" + std::to_string(i), corners[i]});
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    edges.push_back({"e" + std::to_string(i), vertices[i].id, vertices[j].id,
                     GeodesicSamples(space, corners[i], corners[j],
                                     n_per_edge)});
  }
  return EmbeddedGraph::Create(space, std::move(vertices), std::move(edges));
}

EmbeddedGraph UnitSquare(int n_per_edge) {
  return GeodesicPolygon(SpaceForm::Flat(3),
                         {MakeVec({0, 0, 0}), MakeVec({1, 0, 0}),
                          MakeVec({1, 1, 0}), MakeVec({0, 1, 0})},
                         n_per_edge);
}

EmbeddedGraph CubeSkeleton(int n_per_edge) {
  const SpaceForm flat = SpaceForm::Flat(3);
  std::vector<VertexSpec> vertices;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        vertices.push_back({"v" + std::to_string(4 * x + 2 * y + z),
                            MakeVec({double(x), double(y), double(z)})});
      }
    }
  }
  std::vector<EdgeSpec> edges;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      const int diff = a ^ b;
      if (diff != 1 && diff != 2 && diff != 4) continue;
      edges.push_back({vertices[a].id + "-" + vertices[b].id, vertices[a].id,
                       vertices[b].id,
                       GeodesicSamples(flat, vertices[a].coords,
                                       vertices[b].coords, n_per_edge)});
    }
  }
  return EmbeddedGraph::Create(flat, std::move(vertices), std::move(edges));
}

EmbeddedGraph ThetaGraph(int n_per_edge) {
  std::vector<EdgeSpec> edges;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2 * kPi * k / 3;
    std::vector<Vec> pts;
    for (int i = 0; i <= n_per_edge; ++i) {
      const double t = kPi * i / n_per_edge;
      pts.push_back(MakeVec({std::sin(t) * std::cos(phi),
                             std::sin(t) * std::sin(phi), std::cos(t)}));
    }
    edges.push_back({"arc" + std::to_string(k), "north", "south", pts});
  }
  return EmbeddedGraph::Create(
      SpaceForm::Flat(3),
      {{"north", MakeVec({0, 0, 1})}, {"south", MakeVec({0, 0, -1})}},
      std::move(edges));
}

EmbeddedGraph GeodesicTheta(int n_per_edge) {
  const SpaceForm flat = SpaceForm::Flat(3);
  const Vec a = MakeVec({0, 0, 0});
  const Vec b = MakeVec({2, 0, 0});
  const Vec c = MakeVec({1, 1, 0});
  const Vec d = MakeVec({1, -0.5, 1});
  return EmbeddedGraph::Create(
      flat, {{"a", a}, {"b", b}, {"c", c}, {"d", d}},
      {{"ab", "a", "b", GeodesicSamples(flat, a, b, n_per_edge)},
       {"ac", "a", "c", GeodesicSamples(flat, a, c, n_per_edge)},
       {"cb", "c", "b", GeodesicSamples(flat, c, b, n_per_edge)},
       {"ad", "a", "d", GeodesicSamples(flat, a, d, n_per_edge)},
       {"db", "d", "b", GeodesicSamples(flat, d, b, n_per_edge)}});
}

EmbeddedGraph SmoothLoop(const SpaceForm& space, double scale, int n) {
  std::vector<Vec> pts = SampleNormalCurve(
      space,
      [&](double t) {
        const double th = 2 * kPi * t;
        return Eigen::VectorXd(
            scale * Vec3(std::cos(th) + 0.3 * std::cos(2 * th),
                         std::sin(th) - 0.2 * std::sin(2 * th),
                         0.4 * std::sin(3 * th) + 0.1));
      },
      n);
  pts.back() = pts.front();
  return EmbeddedGraph::Create(space, {{"q", pts.front()}},
                               {{"loop", "q", "q", pts}});
}

EmbeddedGraph CurvedTheta(const SpaceForm& space, double scale, int n) {
  const double widths[3] = {1.0, 0.8, 1.25};
  const double bends[3] = {0.1, -0.15, 0.2};
  std::vector<EdgeSpec> edges;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2 * kPi * k / 3 + 0.1 * k;
    std::vector<Vec> pts = SampleNormalCurve(
        space,
        [&](double t) {
          const double a = kPi * t;
          const double w = widths[k] * std::sin(a);
          const double b = bends[k] * std::sin(2 * a);
          return Eigen::VectorXd(
              scale * Vec3(w * std::cos(phi) - b * std::sin(phi),
                           w * std::sin(phi) + b * std::cos(phi),
                           std::cos(a)));
        },
        n);
    edges.push_back({"arc" + std::to_string(k), "top", "bottom", pts});
  }
  const Point top = FromNormal(space, scale * Vec3(0, 0, 1));
  const Point bottom = FromNormal(space, scale * Vec3(0, 0, -1));
  return EmbeddedGraph::Create(
      space, {{"top", top.coords}, {"bottom", bottom.coords}},
      std::move(edges));
}

EmbeddedGraph RandomSmoothGraph(const SpaceForm& space, double scale,
                                int n_per_edge, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal;
  const int d = space.dim();
  const int k = 3 + static_cast<int>(rng() % 3);
  std::vector<Eigen::VectorXd> y(k);
  for (int i = 0; i < k; ++i) {
    const double angle = 2 * kPi * (i + 0.3 * (uniform(rng) - 0.5)) / k;
    const double radius = scale * (0.7 + 0.3 * uniform(rng));
    y[i] = Eigen::VectorXd::Zero(d);
    y[i][0] = radius * std::cos(angle);
    y[i][1] = radius * std::sin(angle);
    for (int a = 2; a < d; ++a) y[i][a] = 0.3 * scale * normal(rng);
  }
  // Bend of at most `amplitude` times the chord, so the speed stays bounded
  // away from zero and the curvature stays moderate.
  auto bent_edge = [&](int i, int j, double amplitude) {
    Eigen::VectorXd w(d);
    for (int a = 0; a < d; ++a) w[a] = normal(rng);
    w *= amplitude * uniform(rng) * (y[j] - y[i]).norm() / w.norm();
    return SampleNormalCurve(
        space,
        [&](double t) {
          return Eigen::VectorXd((1 - t) * y[i] + t * y[j] +
                                 std::sin(kPi * t) * w);
        },
        n_per_edge);
  };
  std::vector<VertexSpec> vertices;
  for (int i = 0; i < k; ++i) {
    vertices.push_back({"v" + std::to_string(i), FromNormal(space, y[i]).coords});
  }
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    edges.push_back({"e" + std::to_string(i), vertices[i].id, vertices[j].id,
                     bent_edge(i, j, 0.15)});
  }
  if (uniform(rng) < 0.5) {
    // Chord from vertex 0 lifted off the cycle so it does not cross it.
    const int mid = k / 2;
    edges.push_back({"chord", vertices[0].id, vertices[mid].id,
                     SampleNormalCurve(
                         space,
                         [&](double t) {
                           Eigen::VectorXd y_t = (1 - t) * y[0] + t * y[mid];
                           y_t[d - 1] += 0.5 * scale * std::sin(kPi * t);
                           return y_t;
                         },
                         n_per_edge)});
  }
  return EmbeddedGraph::Create(space, std::move(vertices), std::move(edges));
}

Point RandomApex(const EmbeddedGraph& graph, double radius, double clearance,
                 Rng& rng) {
  const SpaceForm& space = graph.space();
  const std::vector<Point> samples = graph.DistinctSamples();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int d = space.dim();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Eigen::VectorXd y(d);
    for (int a = 0; a < d; ++a) y[a] = normal(rng);
    y *= radius * std::pow(uniform(rng), 1.0 / d) / y.norm();
    const Point p = FromNormal(space, y);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& x : samples) best = std::min(best, space.Dist(p, x));
    if (best >= clearance) return p;
  }
  throw std::runtime_error("no apex with the requested clearance");
}

Vec Isometry::Apply(const Vec& x) const {
  Vec out = linear * Eigen::VectorXd(x);
  if (translation.size() == out.size()) out += translation;
  return out;
}

Isometry RandomIsometry(const SpaceForm& space, Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const int m = space.embedding_dim();
  Isometry iso;
  switch (space.model()) {
    case Model::kFlat:
      iso.linear = RandomOrthogonal(m, rng);
      iso.translation = Vec(m);
      for (int i = 0; i < m; ++i) iso.translation[i] = normal(rng);
      break;
    case Model::kSpherical:
      iso.linear = RandomOrthogonal(m, rng);
      break;
    case Model::kHyperbolic: {
      auto spatial = [&]() {
        Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m);
        r.bottomRightCorner(m - 1, m - 1) = RandomOrthogonal(m - 1, rng);
        return r;
      };
      const double phi = uniform(rng);
      Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(m, m);
      boost(0, 0) = boost(1, 1) = std::cosh(phi);
      boost(0, 1) = boost(1, 0) = std::sinh(phi);
      iso.linear = spatial() * boost * spatial();
      break;
    }
  }
  return iso;
}

EmbeddedGraph Transform(const EmbeddedGraph& graph, const Isometry& iso) {
  std::vector<VertexSpec> vertices = VertexSpecs(graph);
  std::vector<EdgeSpec> edges = EdgeSpecs(graph);
  for (VertexSpec& v : vertices) v.coords = iso.Apply(v.coords);
  for (EdgeSpec& e : edges) {
    for (Vec& x : e.samples) x = iso.Apply(x);
  }
  return EmbeddedGraph::Create(graph.space(), std::move(vertices),
                               std::move(edges));
}

std::vector<std::array<std::size_t, 2>> RandomConnectedMultigraph(
    std::size_t num_vertices, std::size_t extra_edges, Rng& rng) {
  std::vector<std::array<std::size_t, 2>> edges;
  for (std::size_t v = 1; v < num_vertices; ++v) {
    edges.push_back({rng() % v, v});
  }
  for (std::size_t i = 0; i < extra_edges; ++i) {
    edges.push_back({rng() % num_vertices, rng() % num_vertices});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return edges;
}

std::string ToJson(const EmbeddedGraph& graph) {
  using nlohmann::json;
  auto coords = [](const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
  };
  json doc;
  doc["space"] = {{"model", ModelName(graph.space().model())},
                  {"dim", graph.space().dim()},
                  {"curv", graph.space().curv()}};
  doc["vertices"] = json::array();
  for (const Vertex& v : graph.vertices()) {
    doc["vertices"].push_back({{"id", v.id}, {"coords", coords(v.point.coords)}});
  }
  doc["edges"] = json::array();
  for (const EdgeCurve& e : graph.edges()) {
    json samples = json::array();
    for (const Point& p : e.samples) samples.push_back(coords(p.coords));
    doc["edges"].push_back(
        {{"id", e.id},
         {"endpoints",
          {graph.vertices()[e.endpoints[0]].id,
           graph.vertices()[e.endpoints[1]].id}},
         {"samples", samples}});
  }
  return doc.dump(1);
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "soapcert_tests";
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return path.string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace soapcert::testing
