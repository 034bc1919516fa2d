#include <gtest/gtest.h>

#include "harmext/lift.hpp"
#include "harmext/quadrature.hpp"
#include "oracles.hpp"

using namespace harmext;
using harmext::testing::Gen;

namespace {

MapSpec random_spec(Gen& g) {
  std::vector<Complex> h{1.0}, q;
  for (int k = 0; k < 3; ++k) h.push_back(g.complex(0.15));
  for (int k = 0; k < 3; ++k) q.push_back(g.complex(0.4));
  return MapSpec(make_series(h), make_series(q));
}

std::vector<MapSpec> sample_specs() {
  Gen g(31);
  return {builtin::identity(), builtin::shear(0.3), builtin::alpha_power(0.7), builtin::harmonic_power(0.9, 0.3),
          random_spec(g), random_spec(g)};
}

}  // namespace

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 16; ++i) sum += gauss_legendre_weights()[i] * std::pow(gauss_legendre_nodes()[i], 30);
  EXPECT_NEAR(sum, 2.0 / 31.0, 1e-15);
}

TEST(Quadrature, SegmentIntegralOfExponential) {
  const Complex z{0.6, -0.5};
  const auto r = integrate_segment([](Complex w) { return std::array<Complex, 3>{std::exp(w), 1.0 / (2.0 - w), w}; }, z);
  EXPECT_LT(std::abs(r[0] - (std::exp(z) - 1.0)), 1e-15);
  EXPECT_LT(std::abs(r[1] + std::log(1.0 - z / 2.0)), 1e-15);
  EXPECT_LT(std::abs(r[2] - z * z / 2.0), 1e-15);
}

TEST(Lift, OriginIsFixed) {
  for (const auto& s : sample_specs()) EXPECT_LT(norm(lift_point(s, 0.0)), 1e-15);
}

TEST(Lift, IdentityFrame) {
  const SurfaceJet j = surface_jet(builtin::identity(), Complex(0.3, 0.2));
  EXPECT_LT(distance(j.du, {1, 0, 0}), 1e-15);
  EXPECT_LT(distance(j.dv, {0, 1, 0}), 1e-15);
  EXPECT_LT(distance(j.normal, {0, 0, 1}), 1e-15);
  EXPECT_EQ(j.alpha11, 0.0);
  EXPECT_EQ(j.alpha12, 0.0);
}

TEST(Lift, ShearClosedForm) {
  const double a = 0.3;
  const MapSpec s = builtin::shear(a);
  Gen g(32);
  for (int k = 0; k < 50; ++k) {
    const Complex z = g.disk(0.99);
    const Point3 expected{(1 + a) * z.real(), (1 - a) * z.imag(), 2 * std::sqrt(a) * z.imag()};
    EXPECT_LT(distance(lift_point(s, z), expected), 1e-14);
  }
}

TEST(Lift, AlphaPowerQuadratureMatchesClosedForm) {
  const double a = 0.7;
  const MapSpec s = builtin::alpha_power(a);
  Gen g(33);
  for (int k = 0; k < 100; ++k) {
    const Complex z = g.disk(0.99);
    const Complex f = std::pow((1.0 + z) / (1.0 - z), a) - 1.0;
    const Point3 p = lift_point(s, z);
    EXPECT_LT(distance(p, Point3::from_plane(f)), 1e-10 * std::max(1.0, std::abs(f)));
  }
}

TEST(Lift, QuadraturePathAgreesWithExactPrimitives) {
  Gen g(34);
  for (int k = 0; k < 10; ++k) {
    const MapSpec exact = random_spec(g);
    const MapSpec forced(make_composed(exact.h_prime_ptr(), PlanarMoebius::identity(), false),
                         make_composed(exact.q_ptr(), PlanarMoebius::identity(), false));
    ASSERT_EQ(forced.primitives(), nullptr);
    const Complex z = g.disk(0.95);
    EXPECT_LT(distance(lift_point(exact, z), lift_point(forced, z)), 1e-12);
  }
}

TEST(Lift, CurvatureIdentityAtQuadraticPoint) {
  const MapSpec s(make_constant(1.0), make_series({0.0, 1.0}));
  const SurfaceJet j = surface_jet(s, 0.0);
  EXPECT_NEAR(j.alpha11 * j.alpha11 + j.alpha12 * j.alpha12, 4.0, 1e-12);
}

TEST(Lift, AnalyticSpecIsFlat) {
  Gen g(35);
  const MapSpec s = builtin::alpha_power(0.5);
  for (int k = 0; k < 20; ++k) {
    const SurfaceJet j = surface_jet(s, g.disk(0.9));
    EXPECT_LT(distance(j.normal, {0, 0, 1}), 1e-15);
    EXPECT_EQ(j.alpha11, 0.0);
    EXPECT_EQ(j.alpha12, 0.0);
  }
}

TEST(LiftProperty, FrameMatchesFiniteDifferences) {
  Gen g(36);
  for (const auto& s : sample_specs()) {
    for (int k = 0; k < 20; ++k) {
      const Complex z = g.disk(0.8);
      const SurfaceJet j = surface_jet(s, z);
      const double h = 1e-3;
      const Point3 px = harmext::testing::fd3([&](double t) { return lift_point(s, z + t); }, 0.0, h);
      const Point3 py = harmext::testing::fd3([&](double t) { return lift_point(s, z + Complex(0, t)); }, 0.0, h);
      const double e = j.sigma.e_sigma;
      EXPECT_LT(distance(px, j.du), 1e-8 * e) << s.label();
      EXPECT_LT(distance(py, j.dv), 1e-8 * e) << s.label();
      const Point3 pxx = harmext::testing::fd3([&](double t) { return surface_jet_uncached(s, z + t).du; }, 0.0, h);
      const Point3 pxy = harmext::testing::fd3([&](double t) { return surface_jet_uncached(s, z + Complex(0, t)).du; }, 0.0, h);
      EXPECT_LT(distance(pxx, j.d_xixi), 1e-7 * std::max(1.0, norm(j.d_xixi))) << s.label();
      EXPECT_LT(distance(pxy, j.d_xieta), 1e-7 * std::max(1.0, norm(j.d_xieta))) << s.label();
    }
  }
}

TEST(LiftProperty, ConformalMinimalInvariants) {
  Gen g(37);
  for (const auto& s : sample_specs()) {
    for (int k = 0; k < 200; ++k) {
      const SurfaceJet j = surface_jet(s, g.disk(0.999));
      const double e2 = j.sigma.e_sigma * j.sigma.e_sigma;
      EXPECT_NEAR(norm2(j.du) / e2, 1.0, 1e-9);
      EXPECT_NEAR(norm2(j.dv) / e2, 1.0, 1e-9);
      EXPECT_LT(std::abs(dot(j.du, j.dv)), 1e-9 * e2);
      EXPECT_NEAR(norm(j.normal), 1.0, 1e-12);
      EXPECT_LT(std::abs(j.alpha11 + j.alpha22), 1e-9 * e2);
      const double kk = e2 * e2 * std::abs(curvature(j.sigma));
      EXPECT_LT(std::abs(j.alpha11 * j.alpha11 + j.alpha12 * j.alpha12 - kk), 1e-7 * std::max(kk, 1e-12 * e2 * e2));
    }
  }
}

TEST(LiftProperty, XiDerivativesMatchFiniteDifferences) {
  Gen g(38);
  for (const auto& s : sample_specs()) {
    for (int k = 0; k < 10; ++k) {
      const double x = g.uniform(-0.8, 0.8);
      const auto d = xi_derivatives(s, x);
      const Point3 fd3rd = harmext::testing::fd3([&](double t) { return xi_derivatives(s, x + t)[1]; }, 0.0, 1e-3);
      EXPECT_LT(distance(fd3rd, d[2]), 1e-6 * std::max(1.0, norm(d[2]))) << s.label();
    }
  }
}

TEST(TangentialProject, ProjectionProperties) {
  Gen g(39);
  const MapSpec s = builtin::harmonic_power(0.9, 0.3);
  for (int k = 0; k < 50; ++k) {
    const SurfaceJet j = surface_jet(s, g.disk(0.9));
    const Point3 v = g.point(2.0);
    const Point3 p = tangential_project(j, v);
    EXPECT_LT(distance(tangential_project(j, p), p), 1e-12);
    EXPECT_LT(norm(tangential_project(j, j.normal)), 1e-14);
    EXPECT_LT(distance(tangential_project(j, j.du), j.du), 1e-12 * norm(j.du));
  }
}

TEST(SurfaceJetCache, CachedEqualsUncached) {
  Gen g(40);
  const MapSpec s = builtin::harmonic_power(0.9, 0.3);
  for (int k = 0; k < 20; ++k) {
    const Complex z = g.disk(0.9);
    const SurfaceJet a = surface_jet(s, z), b = surface_jet(s, z), c = surface_jet_uncached(s, z);
    EXPECT_EQ(distance(a.position, b.position), 0.0);
    EXPECT_LT(distance(a.position, c.position), 1e-15);
  }
  EXPECT_GT(s.cache().size(), 0u);
}
