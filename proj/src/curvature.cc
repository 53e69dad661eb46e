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

#include "soapcert/curvature.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "soapcert/errors.h"

namespace soapcert {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
// arccos is evaluated on [-1 + eps, 1 - eps] when differentiating.
constexpr double kGradientClamp = 1e-9;

// Derivative at the middle node of the quadratic through (-hm, xm), (0, x0),
// (hp, xp).
Vec CentralDerivative(const Vec& xm, const Vec& x0, const Vec& xp, double hm,
                      double hp) {
  return xm * (-hp / (hm * (hm + hp))) + x0 * ((hp - hm) / (hm * hp)) +
         xp * (hm / (hp * (hm + hp)));
}

// Angle between unit vectors, accurate near 0 and pi.
double UnitAngle(const Vec& a, const Vec& b) {
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

double SumAngles(std::span<const Vec> star, const Vec& e) {
  double g = 0.0;
  for (const Vec& t : star) g += kHalfPi - UnitAngle(t, e);
  return g;
}

Vec Gradient(std::span<const Vec> star, const Vec& e) {
  Vec grad = Vec::Zero(e.size());
  for (const Vec& t : star) {
    const double c =
        std::clamp(t.dot(e), -1.0 + kGradientClamp, 1.0 - kGradientClamp);
    grad += t / std::sqrt(1.0 - c * c);
  }
  return grad - grad.dot(e) * e;
}

// Projected-gradient ascent on the unit sphere with backtracking.
Vec Ascend(std::span<const Vec> star, Vec e, double* value) {
  double g = SumAngles(star, e);
  double step = 0.1;
  for (int iter = 0; iter < 2000; ++iter) {
    const Vec grad = Gradient(star, e);
    const double gnorm2 = grad.squaredNorm();
    if (gnorm2 < 1e-24) break;
    bool accepted = false;
    step = std::min(step * 4.0, 1.0);
    while (step > 1e-16) {
      Vec trial = e + (step / std::sqrt(gnorm2)) * grad;
      trial.normalize();
      const double gt = SumAngles(star, trial);
      if (gt > g + 1e-4 * step * std::sqrt(gnorm2)) {
        e = trial;
        accepted = gt - g > 1e-15;
        g = gt;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  *value = g;
  return e;
}

}  // namespace

TangentVector CurveTangent(const SpaceForm& space, const EdgeCurve& edge,
                           std::size_t i) {
  const std::size_t n = edge.size();
  if (n < 3) {
    throw ValidationError(
        fmt::format("edge '{}' has fewer than three samples", edge.id));
  }
  if (i == 0) return EndTangent(space, edge, 0);
  if (i == n - 1) {
    TangentVector t = EndTangent(space, edge, 1);
    t.vec = -t.vec;
    return t;
  }
  const Point& base = edge.samples[i];
  Vec d = CentralDerivative(edge.samples[i - 1].coords, base.coords,
                            edge.samples[i + 1].coords,
                            edge.s[i] - edge.s[i - 1],
                            edge.s[i + 1] - edge.s[i]);
  d = space.ToTangent(base, d);
  const double norm = space.Norm(base, d);
  if (!(norm > 0)) {
    throw NumericalError(
        fmt::format("edge '{}': degenerate tangent at sample {}", edge.id, i));
  }
  return {base, d / norm};
}

std::vector<CurvatureSample> EdgeCurvature(const SpaceForm& space,
                                           const EdgeCurve& edge) {
  const std::size_t n = edge.size();
  if (n < 3) {
    throw ValidationError(
        fmt::format("edge '{}' has fewer than three samples", edge.id));
  }
  std::vector<CurvatureSample> out;
  out.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Point& base = edge.samples[i];
    const double hm = edge.s[i] - edge.s[i - 1];
    const double hp = edge.s[i + 1] - edge.s[i];
    const Vec& xm = edge.samples[i - 1].coords;
    const Vec& xp = edge.samples[i + 1].coords;
    Vec acc = ((xp - base.coords) / hp - (base.coords - xm) / hm) *
              (2.0 / (hm + hp));
    acc = space.ToTangent(base, acc);
    const TangentVector t = CurveTangent(space, edge, i);
    acc -= space.Form(acc, t.vec) * t.vec;
    TangentVector k{base, acc};
    out.push_back({edge.s[i], k, space.Norm(k)});
  }
  return out;
}

std::vector<double> ExtendToEnds(std::span<const double> s,
                                 std::span<const double> interior) {
  const std::size_t n = s.size();
  if (n < 3 || interior.size() != n - 2) {
    throw ValidationError("interior values do not match the sample count");
  }
  std::vector<double> v(n);
  std::copy(interior.begin(), interior.end(), v.begin() + 1);
  if (n == 3) {
    v[0] = v[2] = v[1];
    return v;
  }
  auto extrapolate = [](double s_at, double sa, double va, double sb,
                        double vb) {
    return va + (vb - va) * (s_at - sa) / (sb - sa);
  };
  v[0] = extrapolate(s[0], s[1], v[1], s[2], v[2]);
  v[n - 1] = extrapolate(s[n - 1], s[n - 2], v[n - 2], s[n - 3], v[n - 3]);
  return v;
}

double IntegrateInterior(std::span<const double> s,
                         std::span<const double> interior) {
  const std::vector<double> v = ExtendToEnds(s, interior);
  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    total += 0.5 * (v[i] + v[i - 1]) * (s[i] - s[i - 1]);
  }
  return total;
}

double EdgeTotalCurvature(const SpaceForm& space, const EdgeCurve& edge) {
  const auto samples = EdgeCurvature(space, edge);
  std::vector<double> kmag;
  kmag.reserve(samples.size());
  for (const auto& k : samples) kmag.push_back(k.kmag);
  std::vector<double> v = ExtendToEnds(edge.s, kmag);
  // |k| >= 0 also at the extrapolated ends.
  v.front() = std::max(0.0, v.front());
  v.back() = std::max(0.0, v.back());
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    total += 0.5 * (v[i] + v[i - 1]) * (edge.s[i] - edge.s[i - 1]);
  }
  return total;
}

double StarObjective(const SpaceForm& space,
                     std::span<const TangentVector> star,
                     const TangentVector& e) {
  double g = 0.0;
  for (const TangentVector& t : star) g += kHalfPi - space.Angle(t, e);
  return g;
}

VertexTc MaximizeStarObjective(const SpaceForm& space,
                               std::span<const TangentVector> star,
                               const TcOptions& options) {
  if (star.empty()) throw ValidationError("empty vertex star");
  const Point& q = star.front().base;
  const std::vector<Vec> basis = space.TangentBasis(q);
  const int n = static_cast<int>(basis.size());

  // Unit tangents in orthonormal coordinates of T_qM.
  std::vector<Vec> local;
  for (const TangentVector& t : star) {
    Vec c(n);
    for (int a = 0; a < n; ++a) c[a] = space.Form(basis[a], t.vec);
    const double norm = c.norm();
    if (!(norm > 0)) throw ValidationError("zero tangent in vertex star");
    local.push_back(c / norm);
  }

  std::vector<Vec> starts;
  for (const Vec& t : local) {
    starts.push_back(t);
    starts.push_back(-t);
  }
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (std::size_t j = i + 1; j < local.size(); ++j) {
      const Vec sum = local[i] + local[j];
      if (sum.norm() > 1e-8) starts.push_back(sum.normalized());
    }
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < options.random_starts; ++k) {
    Vec r(n);
    for (int a = 0; a < n; ++a) r[a] = normal(rng);
    if (r.norm() > 1e-12) starts.push_back(r.normalized());
  }

  double best = -std::numeric_limits<double>::infinity();
  Vec best_dir = starts.front();
  for (const Vec& start : starts) {
    double value = 0.0;
    const Vec e = Ascend(local, start, &value);
    if (value > best) {
      best = value;
      best_dir = e;
    }
  }

  Vec dir = space.Zero();
  for (int a = 0; a < n; ++a) dir += best_dir[a] * basis[a];
  TangentVector argmax{q, dir / space.Norm(q, dir)};
  return {StarObjective(space, star, argmax), argmax};
}

VertexTc VertexContribution(const EmbeddedGraph& graph, std::size_t vertex,
                            const TcOptions& options) {
  const std::vector<TangentVector> star = VertexStar(graph, vertex);
  if (star.size() < 2) {
    throw ValidationError(fmt::format("vertex '{}' has valence below 2",
                                      graph.vertices()[vertex].id));
  }
  return MaximizeStarObjective(graph.space(), star, options);
}

TCReport ConeTotalCurvature(const EmbeddedGraph& graph,
                            const TcOptions& options) {
  TCReport report;
  for (const EdgeCurve& e : graph.edges()) {
    const double integral = EdgeTotalCurvature(graph.space(), e);
    report.per_edge.push_back({e.id, integral});
    report.total += integral;
  }
  for (std::size_t v = 0; v < graph.vertices().size(); ++v) {
    VertexTc tc = VertexContribution(graph, v, options);
    report.total += tc.tc;
    report.per_vertex.push_back(
        {graph.vertices()[v].id, tc.tc, std::move(tc.argmax_dir)});
  }
  return report;
}

}  // namespace soapcert
