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

// Exact geometry of the three simply connected constant-curvature model
// spaces, each realized as a submanifold of a flat embedding space:
//
//   Flat        R^n, Euclidean form.
//   Hyperbolic  H^n(-kappa^2) as the upper sheet of the hyperboloid
//               <x,x> = -1/kappa^2 in Minkowski R^{1,n}.  Coordinate 0 is
//               the time coordinate and the form is -x0*y0 + sum xi*yi.
//   Spherical   S^n(b^2) as the round sphere |x| = 1/b in R^{n+1}.
//
// All distances, geodesics and angles are closed-form.  Every operation is
// a pure function of immutable values.

#ifndef SOAPCERT_SPACE_FORM_H_
#define SOAPCERT_SPACE_FORM_H_

#include <string>
#include <vector>

#include <Eigen/Core>

namespace soapcert {

// Embedding vectors live on the stack; the manifold dimension is therefore
// limited to kMaxEmbeddingDim - 1.
inline constexpr int kMaxEmbeddingDim = 16;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor,
                          kMaxEmbeddingDim, 1>;

enum class Model { kFlat, kHyperbolic, kSpherical };

const char* ModelName(Model model);

// A point of the model manifold in embedding coordinates.
struct Point {
  Vec coords;
};

// A tangent vector in embedding coordinates together with its base point.
struct TangentVector {
  Point base;
  Vec vec;
};

// Radial comparison functions of the model: the Jacobi field length f(r),
// its derivative f'(r) and the primitive F(r) = int_0^r f.  The geodesic
// circle of radius r has curvature f'(r)/f(r).
struct ComparisonValues {
  double f;
  double fprime;
  double F;
};

class SpaceForm {
 public:
  static SpaceForm Flat(int dim);
  // Sectional curvature -kappa^2.
  static SpaceForm Hyperbolic(int dim, double kappa);
  // Sectional curvature +b^2.
  static SpaceForm Spherical(int dim, double b);

  Model model() const { return model_; }
  int dim() const { return dim_; }
  // kappa for Hyperbolic, b for Spherical, 0 for Flat.
  double curv() const { return curv_; }
  int embedding_dim() const { return model_ == Model::kFlat ? dim_ : dim_ + 1; }
  // Signed sectional curvature: -kappa^2, 0 or b^2.
  double gauss_curvature() const;
  // pi/b for Spherical, +infinity otherwise.
  double diameter_bound() const;
  // The two-dimensional model of the same curvature.
  SpaceForm Plane() const;

  // Ambient bilinear form of the embedding space.
  double Form(const Vec& x, const Vec& y) const;
  // |<x,x> - target| for the model's defining quadric (0 for Flat).
  double Residual(const Vec& x) const;
  // Radial projection onto the model manifold.  Throws ValidationError for
  // vectors that cannot be projected (zero, or not future timelike).
  Point Project(const Vec& x) const;
  // Canonical base point: the origin, (1/kappa, 0, ...) or (1/b, 0, ...).
  Point Origin() const;
  Vec Zero() const;

  // Orthogonal projection of an embedding vector onto T_pM.
  Vec ToTangent(const Point& p, const Vec& v) const;
  TangentVector Tangent(const Point& p, const Vec& v) const {
    return {p, ToTangent(p, v)};
  }
  // Orthonormal basis of T_pM (dim() vectors).
  std::vector<Vec> TangentBasis(const Point& p) const;

  // Riemannian metric.  Throws ValidationError when the base points differ.
  double Inner(const TangentVector& u, const TangentVector& v) const;
  double Norm(const TangentVector& u) const;
  double Norm(const Point& p, const Vec& v) const;

  double Dist(const Point& p, const Point& q) const;
  // Initial velocity of the geodesic from p to q, of length Dist(p, q).
  TangentVector Log(const Point& p, const Point& q) const;
  Point Exp(const TangentVector& v) const;
  // Velocity at time t of the unit-speed geodesic t -> Exp(p, t*u); u must
  // be a unit tangent vector at p.
  Vec GeodesicVelocity(const Point& p, const Vec& u, double t) const;
  // Angle in [0, pi] between two nonzero tangent vectors at the same point.
  double Angle(const TangentVector& u, const TangentVector& v) const;

  ComparisonValues Comparison(double r) const;

  std::string Describe() const;

 private:
  SpaceForm(Model model, int dim, double curv)
      : model_(model), dim_(dim), curv_(curv) {}

  void CheckSameBase(const Point& a, const Point& b) const;
  void CheckTangent(const Point& p, const Vec& v) const;
  void CheckDim(const Vec& v) const;

  Model model_;
  int dim_;
  double curv_;
};

}  // namespace soapcert

#endif  // SOAPCERT_SPACE_FORM_H_
