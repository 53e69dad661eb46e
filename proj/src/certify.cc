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

#include "soapcert/certify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include <fmt/format.h>

#include "soapcert/cone.h"
#include "soapcert/errors.h"

namespace soapcert {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridClearance = 1e-4;
constexpr double kCenterTolerance = 1e-10;
constexpr int kCenterIterations = 200;
constexpr double kSimplexTolerance = 1e-6;
constexpr int kSimplexEvaluations = 800;
constexpr std::size_t kRefineStarts = 3;
// Relative weight of the squared distance to the center in the extremal
// search.
constexpr double kTieBreak = 1e-6;

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                           23, 29, 31, 37, 41, 43, 47, 53};

double RadicalInverse(unsigned long long index, int base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

// Indices of the k lowest finite values whose points are pairwise at least
// `separation` apart, best first.
std::vector<std::size_t> BestIndices(const SpaceForm& space,
                                     const std::vector<Point>& points,
                                     const std::vector<double>& values,
                                     std::size_t k, double separation) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<std::size_t> out;
  for (std::size_t i : order) {
    if (out.size() == k || !std::isfinite(values[i])) break;
    const bool apart = std::all_of(out.begin(), out.end(), [&](std::size_t j) {
      return space.Dist(points[i], points[j]) >= separation;
    });
    if (apart) out.push_back(i);
  }
  return out;
}

double MinDistanceToGraph(const SpaceForm& space,
                          const std::vector<Point>& samples, const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& x : samples) best = std::min(best, space.Dist(p, x));
  return best;
}

// Nelder-Mead minimization of phi over R^n starting from the origin.
Eigen::VectorXd NelderMead(
    const std::function<double(const Eigen::VectorXd&)>& phi, int n,
    double initial_step, double* best_value) {
  std::vector<Eigen::VectorXd> x(n + 1, Eigen::VectorXd::Zero(n));
  std::vector<double> f(n + 1);
  for (int i = 0; i < n; ++i) x[i + 1][i] = initial_step;
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& y) {
    ++evals;
    return phi(y);
  };
  for (int i = 0; i <= n; ++i) f[i] = eval(x[i]);

  std::vector<int> order(n + 1);
  while (evals < kSimplexEvaluations) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return f[a] < f[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[n - 1];
    double size = 0.0;
    for (int i = 0; i <= n; ++i) {
      size = std::max(size, (x[i] - x[best]).norm());
    }
    if (size < kSimplexTolerance) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += x[i];
    }
    centroid /= n;
    const Eigen::VectorXd reflected = centroid + (centroid - x[worst]);
    const double fr = eval(reflected);
    if (fr < f[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - x[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        x[worst] = expanded;
        f[worst] = fe;
      } else {
        x[worst] = reflected;
        f[worst] = fr;
      }
      continue;
    }
    if (fr < f[second]) {
      x[worst] = reflected;
      f[worst] = fr;
      continue;
    }
    const bool outside = fr < f[worst];
    const Eigen::VectorXd contracted =
        outside ? centroid + 0.5 * (reflected - centroid)
                : centroid + 0.5 * (x[worst] - centroid);
    const double fc = eval(contracted);
    if (fc < std::min(fr, f[worst])) {
      x[worst] = contracted;
      f[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      x[i] = x[best] + 0.5 * (x[i] - x[best]);
      f[i] = eval(x[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (f[i] < f[best]) best = i;
  }
  *best_value = f[best];
  return x[best];
}

}  // namespace

const char* VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kEmbeddedOrY:
      return "EmbeddedOrY";
    case Verdict::kYSingularitiesOnly:
      return "YSingularitiesOnly";
    case Verdict::kSimpleCurveEmbedded:
      return "SimpleCurveEmbedded";
    case Verdict::kNoCertificate:
      return "NoCertificate";
  }
  return "unknown";
}

const char* CertModeName(CertMode mode) {
  return mode == CertMode::kStrict ? "strict" : "heuristic";
}

double DensityBound(const EmbeddedGraph& graph, const Point& apex,
                    const TCReport& tc) {
  const SpaceForm& space = graph.space();
  double area_term = 0.0;
  if (space.model() == Model::kFlat) {
    if (MinDistanceToGraph(space, graph.DistinctSamples(), apex) < 1e-6) {
      throw NumericalError("apex lies on the graph");
    }
  } else {
    area_term = space.gauss_curvature() * AmbientConeArea(graph, apex);
  }
  return (tc.total + area_term) / (2.0 * kPi);
}

HullApprox BuildHullApprox(const EmbeddedGraph& graph, int grid_n) {
  if (grid_n < 1) throw ValidationError("grid size must be at least 1");
  const SpaceForm& space = graph.space();
  const std::vector<Point> samples = graph.DistinctSamples();

  Vec mean = space.Zero();
  for (const Point& x : samples) mean += x.coords;
  mean /= static_cast<double>(samples.size());
  Point center = samples.front();
  if (space.model() == Model::kFlat) {
    center = Point{mean};
  } else {
    if (space.model() == Model::kSpherical && mean.norm() > 1e-12) {
      center = space.Project(mean);
    } else if (space.model() == Model::kHyperbolic) {
      center = space.Project(mean);
    }
    bool converged = false;
    for (int iter = 0; iter < kCenterIterations; ++iter) {
      Vec step = space.Zero();
      for (const Point& x : samples) {
        if (space.Dist(center, x) < 1e-14) continue;
        step += space.Log(center, x).vec;
      }
      step /= static_cast<double>(samples.size());
      step = space.ToTangent(center, step);
      const double len = space.Norm(center, step);
      if (!std::isfinite(len) || len >= space.diameter_bound()) break;
      center = space.Exp(TangentVector{center, step});
      if (len < kCenterTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("center of mass iteration did not converge");
    }
  }

  HullApprox hull;
  hull.center = center;
  for (const Point& x : samples) {
    hull.radius = std::max(hull.radius, space.Dist(center, x));
  }
  if (space.model() == Model::kSpherical &&
      2.0 * hull.radius >= space.diameter_bound()) {
    throw NumericalError(fmt::format(
        "diameter bound violated: hull ball of radius {} has diameter >= pi/b",
        hull.radius));
  }

  const std::vector<Vec> basis = space.TangentBasis(center);
  const int n = static_cast<int>(basis.size());
  hull.grid.push_back(center);
  for (unsigned long long index = 1;
       static_cast<int>(hull.grid.size()) < grid_n; ++index) {
    Eigen::VectorXd y(n);
    for (int a = 0; a < n; ++a) {
      y[a] = 2.0 * RadicalInverse(index, kPrimes[a]) - 1.0;
    }
    if (y.norm() > 1.0) continue;
    Vec v = space.Zero();
    for (int a = 0; a < n; ++a) v += (hull.radius * y[a]) * basis[a];
    hull.grid.push_back(space.Exp(TangentVector{center, v}));
  }
  return hull;
}

ExtremalArea ExtremalConeArea(const EmbeddedGraph& graph,
                              const HullApprox& hull, Extremum which) {
  const SpaceForm& space = graph.space();
  const std::vector<Point> samples = graph.DistinctSamples();
  const double sign = which == Extremum::kMin ? 1.0 : -1.0;
  const double infeasible = std::numeric_limits<double>::infinity();

  // Signed area, +inf outside the ball or too close to the graph.
  auto signed_area = [&](const Point& p) {
    if (space.Dist(hull.center, p) > hull.radius * (1.0 + 1e-9)) {
      return infeasible;
    }
    if (MinDistanceToGraph(space, samples, p) < kGridClearance) {
      return infeasible;
    }
    try {
      return sign * AmbientConeArea(graph, p);
    } catch (const NumericalError&) {
      return infeasible;
    }
  };
  // Extremal sets can be flat (any in-plane apex inside a planar polygon
  // sees the same area); ties go to the apex nearest the center.
  auto objective = [&](const Point& p) {
    const double value = signed_area(p);
    if (!std::isfinite(value)) return value;
    const double d = space.Dist(hull.center, p) / hull.radius;
    return value + kTieBreak * std::abs(value) * d * d;
  };

  double best = infeasible;
  std::size_t best_index = 0;
  std::vector<double> grid_values(hull.grid.size());
  for (std::size_t i = 0; i < hull.grid.size(); ++i) {
    const double value = objective(hull.grid[i]);
    grid_values[i] = value;
    if (value < best) {
      best = value;
      best_index = i;
    }
  }
  if (!std::isfinite(best)) {
    throw NumericalError("no admissible apex in the hull grid");
  }

  // Refinement chart at a grid point.  Points leaving the ball are pulled
  // back onto its boundary along the geodesic from the center, with a
  // relative penalty on the excess, so the simplex can slide along it.
  auto clamp_to_ball = [&](const Point& p) -> std::pair<Point, double> {
    const double d = space.Dist(hull.center, p);
    if (d <= hull.radius) return {p, 0.0};
    TangentVector v = space.Log(hull.center, p);
    v.vec *= hull.radius / d;
    return {space.Exp(v), (d - hull.radius) / hull.radius};
  };
  const int n = space.dim();
  const double spacing =
      hull.radius * std::pow(static_cast<double>(hull.grid.size()), -1.0 / n);
  const double initial_step = std::max(0.5 * spacing, 10 * kSimplexTolerance);

  Point best_apex = hull.grid[best_index];
  for (std::size_t start : BestIndices(space, hull.grid, grid_values,
                                           kRefineStarts, spacing)) {
    const Point base = hull.grid[start];
    const std::vector<Vec> basis = space.TangentBasis(base);
    auto chart = [&](const Eigen::VectorXd& y) {
      Vec v = space.Zero();
      for (int a = 0; a < n; ++a) v += y[a] * basis[a];
      return clamp_to_ball(space.Exp(TangentVector{base, v}));
    };
    double refined = infeasible;
    const Eigen::VectorXd y = NelderMead(
        [&](const Eigen::VectorXd& z) {
          const auto [p, excess] = chart(z);
          const double value = objective(p);
          return value + std::abs(value) * excess;
        },
        n, initial_step, &refined);
    const Point apex = chart(y).first;
    const double value = objective(apex);
    if (value < best) {
      best = value;
      best_apex = apex;
    }
  }
  return {sign * signed_area(best_apex), best_apex};
}

CertifyResult RunCertify(const EmbeddedGraph& graph,
                         const CertifyOptions& options) {
  const SpaceForm& space = graph.space();
  CertifyResult result;
  result.tc = ConeTotalCurvature(graph, options.tc);
  const double tc = result.tc.total;
  const double k2 = space.curv() * space.curv();

  // Cone-area correction shared by all thresholds.
  double correction = 0.0;
  bool usable = true;
  std::optional<Point> apex;
  std::string area_note;
  switch (space.model()) {
    case Model::kFlat:
      area_note = "flat model: no cone-area correction";
      break;
    case Model::kHyperbolic:
      if (options.mode == CertMode::kStrict) {
        area_note = "strict: minimum cone area replaced by its lower bound 0";
      } else {
        const HullApprox hull = BuildHullApprox(graph, options.grid_n);
        const ExtremalArea a = ExtremalConeArea(graph, hull, Extremum::kMin);
        correction = k2 * a.value;
        apex = a.apex;
        area_note = fmt::format(
            "heuristic: sampled minimum cone area {:.6f} over the hull ball; "
            "not a rigorous bound",
            a.value);
      }
      break;
    case Model::kSpherical: {
      const HullApprox hull = BuildHullApprox(graph, options.grid_n);
      if (options.mode == CertMode::kStrict) {
        const double r_max = 2.0 * hull.radius;
        if (r_max >= space.diameter_bound()) {
          usable = false;
          correction = -std::numeric_limits<double>::infinity();
          area_note = fmt::format(
              "strict: apex distances up to {:.6f} reach pi/b; no rigorous "
              "cone-area bound",
              r_max);
        } else {
          const ComparisonValues cv = space.Comparison(r_max);
          const double bound = graph.TotalLength() * cv.F / cv.f;
          correction = -k2 * bound;
          area_note = fmt::format(
              "strict: maximum cone area bounded by Length*F(r)/f(r) = {:.6f} "
              "at r = {:.6f}",
              bound, r_max);
        }
      } else {
        const ExtremalArea a = ExtremalConeArea(graph, hull, Extremum::kMax);
        correction = -k2 * a.value;
        apex = a.apex;
        area_note = fmt::format(
            "heuristic: sampled maximum cone area {:.6f} over the hull ball; "
            "not a rigorous bound",
            a.value);
      }
      break;
    }
  }

  const bool spherical = space.model() == Model::kSpherical;
  const bool simple_curve = options.simple_curve && graph.IsSimpleClosedCurve();
  if (options.simple_curve && !simple_curve) {
    area_note +=
        "; simple-curve check skipped: graph is not a simple closed curve";
  }
  auto add_check = [&](Verdict candidate, double threshold, bool strict_ineq,
                       std::string note) {
    ThresholdCheck check;
    check.candidate = candidate;
    check.threshold = threshold;
    check.cone_area_term = correction;
    check.margin = threshold + correction - tc;
    check.strict_inequality = strict_ineq;
    check.qualifies =
        usable && (strict_ineq ? check.margin > 0 : check.margin >= 0);
    check.notes = area_note;
    if (!note.empty()) check.notes += "; " + note;
    result.checks.push_back(std::move(check));
  };

  add_check(Verdict::kEmbeddedOrY, 2.0 * kPi * kCY, false, "");
  if (space.dim() == 3) {
    add_check(Verdict::kYSingularitiesOnly, 2.0 * kPi * kCT, false,
              "assumes the surface is an (M,0,delta)-minimizing set in a "
              "3-manifold; a subset of the T-singularity cone is not excluded");
  }
  if (simple_curve) {
    add_check(Verdict::kSimpleCurveEmbedded, 2.0 * kPi * kCX, spherical,
              "applies to branched minimal immersions bounded by the curve");
  }

  for (const ThresholdCheck& check : result.checks) {
    if (!check.qualifies) continue;
    Certificate cert;
    cert.verdict = check.candidate;
    cert.tc_total = tc;
    cert.threshold = check.threshold;
    cert.cone_area_term = check.cone_area_term;
    cert.margin = check.margin;
    cert.mode = options.mode;
    cert.extremal_apex = apex;
    cert.notes = check.notes;
    result.certificates.push_back(std::move(cert));
  }
  if (result.certificates.empty()) {
    const ThresholdCheck& first = result.checks.front();
    Certificate cert;
    cert.verdict = Verdict::kNoCertificate;
    cert.tc_total = tc;
    cert.threshold = first.threshold;
    cert.cone_area_term = first.cone_area_term;
    cert.margin = first.margin;
    cert.mode = options.mode;
    cert.extremal_apex = apex;
    cert.notes = area_note;
    result.certificates.push_back(std::move(cert));
  }
  return result;
}

}  // namespace soapcert
