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

#include "soapcert/space_form.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "soapcert/errors.h"

namespace soapcert {
namespace {

// Arguments of acos/acosh may leave their domain by at most this much
// through roundoff; anything larger is reported as invalid input.
constexpr double kDomainSlack = 1e-9;
constexpr double kBaseTolerance = 1e-9;
constexpr double kTangentTolerance = 1e-9;
// Below this distance two points are treated as coincident.
constexpr double kCoincident = 1e-14;

}  // namespace

const char* ModelName(Model model) {
  switch (model) {
    case Model::kFlat:
      return "flat";
    case Model::kHyperbolic:
      return "hyperbolic";
    case Model::kSpherical:
      return "spherical";
  }
  return "unknown";
}

SpaceForm SpaceForm::Flat(int dim) {
  if (dim < 2 || dim >= kMaxEmbeddingDim) {
    throw ValidationError(fmt::format("dimension {} out of range [2, {}]", dim,
                                      kMaxEmbeddingDim - 1));
  }
  return SpaceForm(Model::kFlat, dim, 0.0);
}

SpaceForm SpaceForm::Hyperbolic(int dim, double kappa) {
  if (dim < 2 || dim >= kMaxEmbeddingDim) {
    throw ValidationError(fmt::format("dimension {} out of range [2, {}]", dim,
                                      kMaxEmbeddingDim - 1));
  }
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    throw ValidationError("hyperbolic curvature parameter must be > 0");
  }
  return SpaceForm(Model::kHyperbolic, dim, kappa);
}

SpaceForm SpaceForm::Spherical(int dim, double b) {
  if (dim < 2 || dim >= kMaxEmbeddingDim) {
    throw ValidationError(fmt::format("dimension {} out of range [2, {}]", dim,
                                      kMaxEmbeddingDim - 1));
  }
  if (!(b > 0) || !std::isfinite(b)) {
    throw ValidationError("spherical curvature parameter must be > 0");
  }
  return SpaceForm(Model::kSpherical, dim, b);
}

double SpaceForm::gauss_curvature() const {
  switch (model_) {
    case Model::kFlat:
      return 0.0;
    case Model::kHyperbolic:
      return -curv_ * curv_;
    case Model::kSpherical:
      return curv_ * curv_;
  }
  return 0.0;
}

double SpaceForm::diameter_bound() const {
  if (model_ == Model::kSpherical) return std::numbers::pi / curv_;
  return std::numeric_limits<double>::infinity();
}

SpaceForm SpaceForm::Plane() const { return SpaceForm(model_, 2, curv_); }

double SpaceForm::Form(const Vec& x, const Vec& y) const {
  double s = x.dot(y);
  if (model_ == Model::kHyperbolic) s -= 2.0 * x[0] * y[0];
  return s;
}

double SpaceForm::Residual(const Vec& x) const {
  switch (model_) {
    case Model::kFlat:
      return 0.0;
    case Model::kHyperbolic:
      return std::abs(Form(x, x) + 1.0 / (curv_ * curv_));
    case Model::kSpherical:
      return std::abs(Form(x, x) - 1.0 / (curv_ * curv_));
  }
  return 0.0;
}

void SpaceForm::CheckDim(const Vec& v) const {
  if (v.size() != embedding_dim()) {
    throw ValidationError(fmt::format(
        "expected {} embedding coordinates for a {} {}-manifold, got {}",
        embedding_dim(), ModelName(model_), dim_, v.size()));
  }
}

Point SpaceForm::Project(const Vec& x) const {
  CheckDim(x);
  if (!x.allFinite()) throw ValidationError("non-finite coordinates");
  switch (model_) {
    case Model::kFlat:
      return {x};
    case Model::kHyperbolic: {
      const double q = Form(x, x);
      if (!(q < 0) || !(x[0] > 0)) {
        throw ValidationError(
            "point is not on the future sheet of the hyperboloid");
      }
      return {x / (curv_ * std::sqrt(-q))};
    }
    case Model::kSpherical: {
      const double n = x.norm();
      if (!(n > 0)) throw ValidationError("cannot project the zero vector");
      return {x / (curv_ * n)};
    }
  }
  return {x};
}

Point SpaceForm::Origin() const {
  Vec x = Zero();
  if (model_ != Model::kFlat) x[0] = 1.0 / curv_;
  return {x};
}

Vec SpaceForm::Zero() const { return Vec::Zero(embedding_dim()); }

Vec SpaceForm::ToTangent(const Point& p, const Vec& v) const {
  switch (model_) {
    case Model::kFlat:
      return v;
    case Model::kHyperbolic:
      // <p,p> = -1/kappa^2.
      return v + (curv_ * curv_ * Form(p.coords, v)) * p.coords;
    case Model::kSpherical:
      return v - (curv_ * curv_ * Form(p.coords, v)) * p.coords;
  }
  return v;
}

std::vector<Vec> SpaceForm::TangentBasis(const Point& p) const {
  std::vector<Vec> basis;
  const int m = embedding_dim();
  for (int axis = 0; axis < m && static_cast<int>(basis.size()) < dim_;
       ++axis) {
    Vec e = Zero();
    e[axis] = 1.0;
    Vec v = ToTangent(p, e);
    for (const Vec& b : basis) v -= Form(b, v) * b;
    // Second pass keeps the basis orthonormal to roundoff.
    for (const Vec& b : basis) v -= Form(b, v) * b;
    const double n2 = Form(v, v);
    if (n2 > 1e-6) basis.push_back(v / std::sqrt(n2));
  }
  return basis;
}

void SpaceForm::CheckSameBase(const Point& a, const Point& b) const {
  const double scale = 1.0 + a.coords.norm();
  if ((a.coords - b.coords).norm() > kBaseTolerance * scale) {
    throw ValidationError("tangent vectors have different base points");
  }
}

void SpaceForm::CheckTangent(const Point& p, const Vec& v) const {
  if (model_ == Model::kFlat) return;
  const double scale = 1.0 + p.coords.norm() * v.norm();
  if (std::abs(Form(p.coords, v)) > kTangentTolerance * scale) {
    throw ValidationError("vector is not tangent at its base point");
  }
}

double SpaceForm::Inner(const TangentVector& u, const TangentVector& v) const {
  CheckSameBase(u.base, v.base);
  return Form(u.vec, v.vec);
}

double SpaceForm::Norm(const Point& p, const Vec& v) const {
  (void)p;
  return std::sqrt(std::max(0.0, Form(v, v)));
}

double SpaceForm::Norm(const TangentVector& u) const {
  return Norm(u.base, u.vec);
}

double SpaceForm::Dist(const Point& p, const Point& q) const {
  switch (model_) {
    case Model::kFlat:
      return (p.coords - q.coords).norm();
    case Model::kHyperbolic: {
      const double k2 = curv_ * curv_;
      const double c = -k2 * Form(p.coords, q.coords);
      if (c < 1.0 - kDomainSlack) {
        throw NumericalError("hyperbolic distance argument below 1");
      }
      if (c > 2.0) return std::acosh(c) / curv_;
      // Near the diagonal the tangential component is better conditioned.
      const Vec t = q.coords - c * p.coords;
      const double tn = std::sqrt(std::max(0.0, Form(t, t)));
      return std::asinh(curv_ * tn) / curv_;
    }
    case Model::kSpherical: {
      const double b2 = curv_ * curv_;
      const double c = b2 * Form(p.coords, q.coords);
      if (std::abs(c) > 1.0 + kDomainSlack) {
        throw NumericalError("spherical distance argument outside [-1, 1]");
      }
      const Vec t = q.coords - c * p.coords;
      const double d = std::atan2(curv_ * t.norm(), std::clamp(c, -1.0, 1.0)) /
                       curv_;
      if (d >= diameter_bound() - kDomainSlack / curv_) {
        throw NumericalError("diameter bound violated");
      }
      return d;
    }
  }
  return 0.0;
}

TangentVector SpaceForm::Log(const Point& p, const Point& q) const {
  const double d = Dist(p, q);
  if (d < kCoincident) {
    throw NumericalError("log map of coincident points");
  }
  const Vec t = ToTangent(p, q.coords - p.coords);
  const double tn = Norm(p, t);
  if (!(tn > 0)) throw NumericalError("log map of coincident points");
  return {p, t * (d / tn)};
}

Point SpaceForm::Exp(const TangentVector& v) const {
  const Point& p = v.base;
  CheckDim(v.vec);
  CheckTangent(p, v.vec);
  const double n = Norm(v);
  if (model_ == Model::kFlat) return {p.coords + v.vec};
  if (n == 0.0) return p;
  if (model_ == Model::kSpherical && n >= diameter_bound()) {
    throw NumericalError("exponential map beyond the diameter bound");
  }
  const double a = curv_ * n;
  Vec x;
  if (model_ == Model::kHyperbolic) {
    x = std::cosh(a) * p.coords + (std::sinh(a) / a) * v.vec;
  } else {
    x = std::cos(a) * p.coords + (std::sin(a) / a) * v.vec;
  }
  return Project(x);
}

Vec SpaceForm::GeodesicVelocity(const Point& p, const Vec& u, double t) const {
  switch (model_) {
    case Model::kFlat:
      return u;
    case Model::kHyperbolic: {
      const double a = curv_ * t;
      return (curv_ * std::sinh(a)) * p.coords + std::cosh(a) * u;
    }
    case Model::kSpherical: {
      const double a = curv_ * t;
      return (-curv_ * std::sin(a)) * p.coords + std::cos(a) * u;
    }
  }
  return u;
}

double SpaceForm::Angle(const TangentVector& u, const TangentVector& v) const {
  const double uv = Inner(u, v);
  const double nu = Norm(u);
  const double nv = Norm(v);
  if (!(nu > 0) || !(nv > 0)) {
    throw ValidationError("angle with a zero vector");
  }
  const double c = uv / (nu * nv);
  if (std::abs(c) > 1.0 + kDomainSlack) {
    throw NumericalError("normalized inner product outside [-1, 1]");
  }
  // 2 atan2(|a - b|, |a + b|) keeps full precision near 0 and pi, where
  // acos loses half the digits.
  const Vec a = u.vec / nu;
  const Vec b = v.vec / nv;
  const double minus = std::sqrt(std::max(0.0, Form(a - b, a - b)));
  const double plus = std::sqrt(std::max(0.0, Form(a + b, a + b)));
  return 2.0 * std::atan2(minus, plus);
}

ComparisonValues SpaceForm::Comparison(double r) const {
  if (!(r >= 0)) throw NumericalError("negative radius");
  switch (model_) {
    case Model::kFlat:
      return {r, 1.0, 0.5 * r * r};
    case Model::kHyperbolic: {
      const double a = curv_ * r;
      const double h = std::sinh(0.5 * a);
      return {std::sinh(a) / curv_, std::cosh(a),
              2.0 * h * h / (curv_ * curv_)};
    }
    case Model::kSpherical: {
      if (r >= diameter_bound()) {
        throw NumericalError("conjugate point reached");
      }
      const double a = curv_ * r;
      const double h = std::sin(0.5 * a);
      return {std::sin(a) / curv_, std::cos(a), 2.0 * h * h / (curv_ * curv_)};
    }
  }
  return {r, 1.0, 0.5 * r * r};
}

std::string SpaceForm::Describe() const {
  if (model_ == Model::kFlat) return fmt::format("flat R^{}", dim_);
  if (model_ == Model::kHyperbolic) {
    return fmt::format("hyperbolic H^{}(-kappa^2), kappa={}", dim_, curv_);
  }
  return fmt::format("spherical S^{}(b^2), b={}", dim_, curv_);
}

}  // namespace soapcert
