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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "soapcert/cone.h"
#include "soapcert/errors.h"
#include "test_util.h"

namespace soapcert {
namespace {

using testing::CubeSkeleton;
using testing::FlatCircle;
using testing::FromNormal;
using testing::MakeVec;
using testing::OriginCircle;
using testing::Rng;

constexpr double kPi = std::numbers::pi;

std::vector<Verdict> Verdicts(const std::vector<Certificate>& certs) {
  std::vector<Verdict> out;
  for (const Certificate& c : certs) out.push_back(c.verdict);
  return out;
}

double CubeCorner() { return 3 * (kPi / 2 - std::acos(1 / std::sqrt(3.0))); }

TEST(CertifyTest, Constants) {
  EXPECT_NEAR(kCT, 1.8245, 1e-4);
  EXPECT_NEAR(2 * kPi * kCT, 6 * std::acos(-1.0 / 3.0), 1e-12);
  EXPECT_NEAR(2 * kPi * kCT, 11.4638, 1e-4);
}

TEST(CertifyTest, DensityBoundAtCircleCenter) {
  const EmbeddedGraph flat = FlatCircle(1.0, 1024);
  EXPECT_NEAR(DensityBound(flat, Point{MakeVec({0, 0, 0})},
                           ConeTotalCurvature(flat)),
              1.0, 1e-4);

  const SpaceForm h = SpaceForm::Hyperbolic(3, 1.0);
  const EmbeddedGraph hyp = OriginCircle(h, 1.0, 1024);
  const TCReport tc = ConeTotalCurvature(hyp);
  EXPECT_NEAR(tc.total, 2 * kPi * std::cosh(1.0), 1e-3);
  EXPECT_NEAR(DensityBound(hyp, h.Origin(), tc), 1.0, 1e-3);
}

TEST(CertifyTest, FlatDensityBoundIgnoresApex) {
  const EmbeddedGraph g = testing::CurvedTheta(SpaceForm::Flat(3), 0.7, 64);
  const TCReport tc = ConeTotalCurvature(g);
  for (const Vec& p : {MakeVec({0, 0, 0}), MakeVec({0.3, -0.2, 5.0})}) {
    EXPECT_DOUBLE_EQ(DensityBound(g, Point{p}, tc), tc.total / (2 * kPi));
  }
  EXPECT_THROW(DensityBound(g, g.edges()[0].samples[4], tc), NumericalError);
}

TEST(CertifyTest, DensityBoundDominatesDevelopedChain) {
  Rng rng(4);
  const SpaceForm h = SpaceForm::Hyperbolic(3, 1.0);
  const EmbeddedGraph g = testing::RandomSmoothGraph(h, 0.8, 512, rng);
  const TCReport tc = ConeTotalCurvature(g);
  for (int trial = 0; trial < 5; ++trial) {
    const Point apex = testing::RandomApex(g, 0.8, 0.1, rng);
    const GaussBonnetTerms t = GaussBonnet(g, apex);
    EXPECT_GE(DensityBound(g, apex, tc) + 1e-3,
              (t.density_term - t.area_term) / (2 * kPi));
  }
}

TEST(CertifyTest, HullOfFlatCircle) {
  const EmbeddedGraph g = FlatCircle(1.0, 256, 0.5);
  const HullApprox hull = BuildHullApprox(g, 200);
  EXPECT_LT((hull.center.coords - MakeVec({0, 0, 0.5})).norm(), 1e-8);
  EXPECT_NEAR(hull.radius, 1.0, 1e-12);
  ASSERT_EQ(hull.grid.size(), 200u);
  EXPECT_EQ(hull.grid[0].coords, hull.center.coords);
  for (const Point& p : hull.grid) {
    EXPECT_LE(g.space().Dist(hull.center, p), hull.radius * (1 + 1e-12));
  }
}

TEST(CertifyTest, HullOfWideSphericalCircle) {
  // Diameter 0.9 pi: accepted, radius 0.45 pi.
  const SpaceForm s = SpaceForm::Spherical(3, 1.0);
  const HullApprox hull = BuildHullApprox(OriginCircle(s, 0.45 * kPi, 512), 64);
  EXPECT_NEAR(hull.radius, 0.45 * kPi, 1e-8);
  EXPECT_LT(s.Dist(hull.center, s.Origin()), 1e-8);
  for (const Point& p : hull.grid) {
    EXPECT_LT(s.Residual(p.coords), 1e-12);
    EXPECT_LE(s.Dist(hull.center, p), hull.radius * (1 + 1e-12));
  }
}

TEST(CertifyTest, HullGridInHyperbolicSpace) {
  const SpaceForm h = SpaceForm::Hyperbolic(3, 1.0);
  const EmbeddedGraph g = testing::SmoothLoop(h, 1.2, 256);
  const HullApprox hull = BuildHullApprox(g, 100);
  for (const Point& x : g.DistinctSamples()) {
    EXPECT_LE(h.Dist(hull.center, x), hull.radius + 1e-12);
  }
  for (const Point& p : hull.grid) {
    EXPECT_LT(h.Residual(p.coords), 1e-10);
    EXPECT_LE(h.Dist(hull.center, p), hull.radius * (1 + 1e-12));
  }
}

TEST(CertifyTest, MinimalConeAreaOfCircle) {
  const EmbeddedGraph g = FlatCircle(1.0, 256);
  const ExtremalArea min =
      ExtremalConeArea(g, BuildHullApprox(g, 1000), Extremum::kMin);
  // The cone area over the inscribed polygon, pi R sqrt(R^2 + z^2) for the
  // circle, is smallest in the plane; there it is the polygon area.
  EXPECT_NEAR(min.value, kPi, 1e-3);
  EXPECT_LT(min.apex.coords.norm(), 1e-2);
}

TEST(CertifyTest, MaximalConeAreaOfCircle) {
  const EmbeddedGraph g = FlatCircle(1.0, 256);
  const ExtremalArea max =
      ExtremalConeArea(g, BuildHullApprox(g, 1000), Extremum::kMax);
  EXPECT_NEAR(max.value, kPi * std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(max.apex.coords.norm(), 1.0, 1e-6);
}

TEST(CertifyTest, MinimalConeAreaIsMonotoneUnderGridRefinement) {
  const EmbeddedGraph g = testing::GeodesicTheta(16);
  double previous = std::numeric_limits<double>::infinity();
  for (int grid : {16, 64, 256, 1024}) {
    const double value =
        ExtremalConeArea(g, BuildHullApprox(g, grid), Extremum::kMin).value;
    EXPECT_GT(value, 0.0);
    EXPECT_LE(value, previous + 1e-12) << "grid " << grid;
    previous = value;
  }
}

TEST(CertifyTest, CircleEarnsAllCertificates) {
  const EmbeddedGraph g = FlatCircle(1.0, 1024);
  CertifyOptions options;
  EXPECT_EQ(Verdicts(Certify(g, options)),
            (std::vector{Verdict::kEmbeddedOrY, Verdict::kYSingularitiesOnly}));
  options.simple_curve = true;
  const std::vector<Certificate> certs = Certify(g, options);
  ASSERT_EQ(Verdicts(certs),
            (std::vector{Verdict::kEmbeddedOrY, Verdict::kYSingularitiesOnly,
                         Verdict::kSimpleCurveEmbedded}));
  EXPECT_NEAR(certs[0].margin, 3 * kPi - 2 * kPi, 1e-4);
  EXPECT_NEAR(certs[2].margin, 4 * kPi - 2 * kPi, 1e-4);
  EXPECT_FALSE(certs[1].notes.empty());
}

TEST(CertifyTest, CubeEarnsNoCertificate) {
  CertifyOptions options;
  options.simple_curve = true;
  const std::vector<Certificate> certs = Certify(CubeSkeleton(16), options);
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_EQ(certs[0].verdict, Verdict::kNoCertificate);
  EXPECT_NEAR(certs[0].margin, 3 * kPi - 8 * CubeCorner(), 1e-2);
  EXPECT_NEAR(certs[0].tc_total, 8 * CubeCorner(), 1e-3);
}

TEST(CertifyTest, ThetaGraphEarnsYSingularitiesOnly) {
  // Three unit semicircles meeting in planar Y vertices.
  const EmbeddedGraph g = testing::ThetaGraph(1024);
  const double expected_tc = 3 * kPi + 2 * (kPi / 6);
  const CertifyResult result = RunCertify(g, {});
  EXPECT_NEAR(result.tc.total, expected_tc, 1e-3);
  ASSERT_EQ(result.certificates.size(), 1u);
  EXPECT_EQ(result.certificates[0].verdict, Verdict::kYSingularitiesOnly);
  EXPECT_NEAR(result.certificates[0].margin, 2 * kPi * kCT - expected_tc,
              1e-3);
}

TEST(CertifyTest, YVerdictNeedsDimensionThree) {
  const SpaceForm flat4 = SpaceForm::Flat(4);
  std::vector<Vec> pts;
  for (int i = 0; i <= 256; ++i) {
    const double t = 2 * kPi * i / 256;
    pts.push_back(MakeVec({std::cos(t), std::sin(t), 0, 0}));
  }
  pts.back() = pts.front();
  const EmbeddedGraph g =
      EmbeddedGraph::Create(flat4, {{"q", pts[0]}}, {{"c", "q", "q", pts}});
  EXPECT_EQ(Verdicts(Certify(g, {})), std::vector{Verdict::kEmbeddedOrY});
}

TEST(CertifyTest, SimpleCurveFlagOnNonCurveIsNoted) {
  CertifyOptions options;
  options.simple_curve = true;
  const CertifyResult result = RunCertify(testing::ThetaGraph(64), options);
  bool noted = false;
  for (const Certificate& c : result.certificates) {
    EXPECT_NE(c.verdict, Verdict::kSimpleCurveEmbedded);
    noted = noted || c.notes.find("simple") != std::string::npos;
  }
  EXPECT_TRUE(noted);
}

TEST(CertifyTest, StrictNeverExceedsHeuristicOnTheSphere) {
  Rng rng(77);
  const SpaceForm s = SpaceForm::Spherical(3, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const EmbeddedGraph g = testing::RandomSmoothGraph(s, 0.6, 32, rng);
    CertifyOptions strict;
    strict.grid_n = 64;
    CertifyOptions heuristic = strict;
    heuristic.mode = CertMode::kHeuristic;
    const CertifyResult a = RunCertify(g, strict);
    const CertifyResult b = RunCertify(g, heuristic);
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
      EXPECT_LE(a.checks[i].margin, b.checks[i].margin + 1e-12);
    }
  }
}

TEST(CertifyTest, StrictImpliesHeuristicInHyperbolicSpace) {
  Rng rng(78);
  const SpaceForm h = SpaceForm::Hyperbolic(3, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const EmbeddedGraph g = testing::RandomSmoothGraph(h, 0.6, 32, rng);
    CertifyOptions strict;
    strict.grid_n = 64;
    CertifyOptions heuristic = strict;
    heuristic.mode = CertMode::kHeuristic;
    const CertifyResult a = RunCertify(g, strict);
    const CertifyResult b = RunCertify(g, heuristic);
    for (std::size_t i = 0; i < a.checks.size(); ++i) {
      EXPECT_LE(a.checks[i].margin, b.checks[i].margin + 1e-12);
      if (a.checks[i].qualifies) EXPECT_TRUE(b.checks[i].qualifies);
    }
  }
}

TEST(CertifyTest, StrictSphericalFallbackWhenBoundIsUnavailable) {
  // Radius 0.5 pi: the strict area bound needs 2 rho < pi.
  const SpaceForm s = SpaceForm::Spherical(3, 1.0);
  const EmbeddedGraph g = OriginCircle(s, 0.499 * kPi, 256);
  const std::vector<Certificate> certs = Certify(g, {});
  ASSERT_EQ(certs.size(), 1u);
  EXPECT_EQ(certs[0].verdict, Verdict::kNoCertificate);
  EXPECT_FALSE(certs[0].notes.empty());
}

TEST(CertifyTest, MarginsAreIsometryInvariant) {
  Rng rng(9);
  for (const SpaceForm& space :
       {SpaceForm::Flat(3), SpaceForm::Hyperbolic(3, 1.0),
        SpaceForm::Spherical(3, 1.0)}) {
    const EmbeddedGraph g = testing::CurvedTheta(space, 0.6, 128);
    const CertifyResult base = RunCertify(g, {});
    const CertifyResult moved = RunCertify(
        testing::Transform(g, testing::RandomIsometry(space, rng)), {});
    ASSERT_EQ(base.checks.size(), moved.checks.size());
    for (std::size_t i = 0; i < base.checks.size(); ++i) {
      EXPECT_NEAR(base.checks[i].margin, moved.checks[i].margin, 1e-8)
          << space.Describe();
      EXPECT_EQ(base.checks[i].qualifies, moved.checks[i].qualifies);
    }
  }
}

TEST(CertifyTest, FlatCertificatesAreScaleInvariant) {
  const EmbeddedGraph g = testing::CurvedTheta(SpaceForm::Flat(3), 0.6, 128);
  testing::Isometry scale;
  scale.linear = 3.5 * Eigen::MatrixXd::Identity(3, 3);
  scale.translation = MakeVec({1, 2, 3});
  const CertifyResult a = RunCertify(g, {});
  const CertifyResult b = RunCertify(testing::Transform(g, scale), {});
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_NEAR(a.checks[i].margin, b.checks[i].margin, 1e-8);
  }
  EXPECT_EQ(Verdicts(a.certificates), Verdicts(b.certificates));
}

}  // namespace
}  // namespace soapcert
