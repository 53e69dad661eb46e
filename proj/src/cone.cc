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

#include "soapcert/cone.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "soapcert/curvature.h"
#include "soapcert/errors.h"

namespace soapcert {
namespace {

constexpr double kApexClearance = 1e-6;
constexpr double kRadialSlack = 1e-6;

double Trapezoid(const std::vector<double>& s, const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    total += 0.5 * (v[i] + v[i - 1]) * (s[i] - s[i - 1]);
  }
  return total;
}

}  // namespace

RadialProfile ComputeRadialProfile(const SpaceForm& space, const Point& apex,
                                   const EdgeCurve& edge) {
  const std::size_t n = edge.size();
  RadialProfile prof;
  prof.r.reserve(n);
  prof.rprime.reserve(n);
  prof.u.reserve(n);
  prof.tangent.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& x = edge.samples[i];
    const double r = space.Dist(apex, x);
    if (r < kApexClearance) {
      throw NumericalError(
          fmt::format("apex lies on the graph (edge '{}')", edge.id));
    }
    if (r >= space.diameter_bound() - kApexClearance) {
      throw NumericalError(fmt::format(
          "edge '{}' reaches the conjugate radius of the apex", edge.id));
    }
    TangentVector to_apex = space.Log(x, apex);
    TangentVector u{x, -to_apex.vec / space.Norm(to_apex)};
    TangentVector t = CurveTangent(space, edge, i);
    double rp = space.Inner(u, t);
    if (std::abs(rp) > 1.0 + kRadialSlack) {
      throw NumericalError(fmt::format(
          "edge '{}': radial speed {} exceeds 1", edge.id, rp));
    }
    rp = std::clamp(rp, -1.0, 1.0);
    prof.r.push_back(r);
    prof.rprime.push_back(rp);
    prof.u.push_back(std::move(u));
    prof.tangent.push_back(std::move(t));
  }
  return prof;
}

PolarFrame PolarPoint(const SpaceForm& plane, double r, double theta) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  Vec x(plane.embedding_dim());
  Vec radial(plane.embedding_dim());
  Vec angular(plane.embedding_dim());
  const double k = plane.curv();
  switch (plane.model()) {
    case Model::kFlat:
      x << r * c, r * sn;
      radial << c, sn;
      angular << -sn, c;
      break;
    case Model::kHyperbolic: {
      const double ch = std::cosh(k * r);
      const double sh = std::sinh(k * r);
      x << ch / k, sh / k * c, sh / k * sn;
      radial << sh, ch * c, ch * sn;
      angular << 0.0, -sn, c;
      break;
    }
    case Model::kSpherical: {
      const double cs = std::cos(k * r);
      const double ss = std::sin(k * r);
      x << cs / k, ss / k * c, ss / k * sn;
      radial << -ss, cs * c, cs * sn;
      angular << 0.0, -sn, c;
      break;
    }
  }
  return {Point{x}, radial, angular};
}

ConeDevelopment DevelopCone(const EmbeddedGraph& graph, const Point& apex) {
  const SpaceForm& space = graph.space();
  const SpaceForm plane = space.Plane();
  ConeDevelopment dev;
  dev.apex = apex;
  double total_angle = 0.0;
  for (const EdgeCurve& edge : graph.edges()) {
    const RadialProfile prof = ComputeRadialProfile(space, apex, edge);
    const std::size_t n = edge.size();
    DevelopedEdge out;
    out.id = edge.id;
    out.s = edge.s;
    out.r = prof.r;
    out.rprime = prof.rprime;

    std::vector<double> dtheta(n);
    std::vector<double> area_density(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double radicand = 1.0 - prof.rprime[i] * prof.rprime[i];
      if (radicand < -1e-6) {
        throw NumericalError(fmt::format(
            "edge '{}': arclength inconsistency at sample {}", edge.id, i));
      }
      const ComparisonValues cv = space.Comparison(prof.r[i]);
      dtheta[i] = std::sqrt(std::max(0.0, radicand)) / cv.f;
      area_density[i] = cv.F * dtheta[i];
    }
    out.theta.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      out.theta[i] = out.theta[i - 1] +
                     0.5 * (dtheta[i] + dtheta[i - 1]) * (edge.s[i] - edge.s[i - 1]);
    }
    total_angle += out.theta.back();
    dev.hat_area += Trapezoid(edge.s, area_density);

    // Re-embed the developed edge and measure its curvature there.
    EdgeCurve developed;
    developed.id = edge.id;
    developed.endpoints = edge.endpoints;
    developed.s = edge.s;
    developed.samples.reserve(n);
    std::vector<PolarFrame> frames;
    frames.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      frames.push_back(PolarPoint(plane, out.r[i], out.theta[i]));
      developed.samples.push_back(frames.back().point);
    }
    const std::vector<CurvatureSample> k = EdgeCurvature(plane, developed);
    std::vector<double> interior;
    interior.reserve(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
      const std::size_t i = j + 1;
      const TangentVector t = CurveTangent(plane, developed, i);
      const double a = plane.Form(t.vec, frames[i].radial);
      const double c = plane.Form(t.vec, frames[i].angular);
      // Rotate the tangent by -90 degrees in the (radial, angular) frame;
      // the result has radial component c >= 0.
      const Vec nu = c * frames[i].radial - a * frames[i].angular;
      interior.push_back(plane.Form(k[j].kvec.vec, nu));
    }
    out.khat_nu = ExtendToEnds(edge.s, interior);
    dev.per_edge.push_back(std::move(out));
  }
  dev.hat_density = total_angle / (2.0 * std::numbers::pi);
  return dev;
}

double AmbientConeDensity(const EmbeddedGraph& graph, const Point& apex) {
  const SpaceForm& space = graph.space();
  double total = 0.0;
  for (const EdgeCurve& edge : graph.edges()) {
    std::vector<TangentVector> dirs;
    dirs.reserve(edge.size());
    for (const Point& x : edge.samples) {
      if (space.Dist(apex, x) < kApexClearance) {
        throw NumericalError(
            fmt::format("apex lies on the graph (edge '{}')", edge.id));
      }
      dirs.push_back(space.Log(apex, x));
    }
    for (std::size_t i = 1; i < dirs.size(); ++i) {
      total += space.Angle(dirs[i - 1], dirs[i]);
    }
  }
  return total / (2.0 * std::numbers::pi);
}

double AmbientConeArea(const EmbeddedGraph& graph, const Point& apex) {
  const SpaceForm& space = graph.space();
  // Two-point Gauss-Legendre nodes on [0, 1].
  constexpr double kNodes[2] = {0.5 - 0.5 / std::numbers::sqrt3,
                                0.5 + 0.5 / std::numbers::sqrt3};

  auto check = [&](const Point& x, const std::string& id) {
    const double r = space.Dist(apex, x);
    if (r < kApexClearance) {
      throw NumericalError(fmt::format("apex lies on the graph (edge '{}')", id));
    }
    if (r >= space.diameter_bound() - kApexClearance) {
      throw NumericalError(fmt::format(
          "edge '{}' reaches the conjugate radius of the apex", id));
    }
    return r;
  };
  // The apex direction of x is the normalized projection of x (of x - p in
  // the flat model) onto T_pM, so its derivative is exact.
  const bool flat = space.model() == Model::kFlat;

  double area = 0.0;
  for (const EdgeCurve& edge : graph.edges()) {
    for (const Point& x : edge.samples) check(x, edge.id);
    // The ruled patch over each geodesic chord, integrated along the chord.
    for (std::size_t i = 0; i + 1 < edge.size(); ++i) {
      const Point& x0 = edge.samples[i];
      const TangentVector w = space.Log(x0, edge.samples[i + 1]);
      const double chord = space.Norm(w);
      const Vec unit = w.vec / chord;
      for (double node : kNodes) {
        const double sigma = node * chord;
        const Point x = space.Exp(TangentVector{x0, sigma * unit});
        const double r = check(x, edge.id);
        const Vec px =
            space.ToTangent(apex, flat ? Vec(x.coords - apex.coords) : x.coords);
        const Vec pv =
            space.ToTangent(apex, space.GeodesicVelocity(x0, unit, sigma));
        const double len = space.Norm(apex, px);
        const Vec dir = px / len;
        const Vec du = (pv - space.Form(pv, dir) * dir) / len;
        // With G(t, s) = c(t) p + f(t) u(s), the s-derivative of G is f(t)
        // du, orthogonal to the ruling; integrating f along it gives F(r).
        area += 0.5 * chord * space.Norm(apex, du) * space.Comparison(r).F;
      }
    }
  }
  return area;
}

std::vector<std::optional<double>> ConeConormalCurvature(
    const SpaceForm& space, const Point& apex, const EdgeCurve& edge) {
  const RadialProfile prof = ComputeRadialProfile(space, apex, edge);
  const std::vector<CurvatureSample> k = EdgeCurvature(space, edge);
  std::vector<std::optional<double>> out;
  out.reserve(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    const std::size_t i = j + 1;
    const Vec nu = prof.u[i].vec - prof.rprime[i] * prof.tangent[i].vec;
    const double norm = space.Norm(edge.samples[i], nu);
    if (norm < 1e-8) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(space.Form(k[j].kvec.vec, nu) / norm);
    }
  }
  return out;
}

double VertexApexTerm(const EmbeddedGraph& graph, const Point& apex,
                      std::size_t vertex) {
  const SpaceForm& space = graph.space();
  const Point& q = graph.vertices()[vertex].point;
  const TangentVector to_apex = space.Log(q, apex);
  double total = 0.0;
  for (const TangentVector& t : VertexStar(graph, vertex)) {
    total += std::numbers::pi / 2 - space.Angle(t, to_apex);
  }
  return total;
}

GaussBonnetTerms GaussBonnet(const EmbeddedGraph& graph,
                             const ConeDevelopment& dev) {
  GaussBonnetTerms terms;
  terms.density_term = 2.0 * std::numbers::pi * dev.hat_density;
  terms.area_term = graph.space().gauss_curvature() * dev.hat_area;
  for (const DevelopedEdge& e : dev.per_edge) {
    terms.boundary_term += Trapezoid(e.s, e.khat_nu);
  }
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    terms.vertex_term += VertexApexTerm(graph, dev.apex, v);
  }
  terms.residual = std::abs(terms.density_term - terms.area_term +
                            terms.boundary_term - terms.vertex_term);
  return terms;
}

GaussBonnetTerms GaussBonnet(const EmbeddedGraph& graph, const Point& apex) {
  return GaussBonnet(graph, DevelopCone(graph, apex));
}

}  // namespace soapcert
