#include <gtest/gtest.h>

#include "harmext/analysis.hpp"
#include "harmext/errors.hpp"
#include "harmext/extension.hpp"
#include "oracles.hpp"

using namespace harmext;
using harmext::testing::Gen;

namespace {

double hyperbolic_speed(const Geodesic& g, double s) {
  const Complex z = g.point(s);
  const Complex d = harmext::testing::fdc([&](double t) { return g.point(t); }, s, 1e-4);
  return std::abs(d) / (1.0 - std::norm(z));
}

SpaceMoebius random_space_moebius(Gen& g) {
  const PlanarMoebius m(g.complex(1.0) + 1.0, g.complex(0.5), g.complex(0.5), 1.0);
  return {m, Frame::standard(), Frame({0.1, -0.2, 0.3}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 1.5)};
}

}  // namespace

TEST(UValue, IdentityClosedForm) {
  const UField f{builtin::identity()};
  EXPECT_DOUBLE_EQ(u_value(f, 0.0), 1.0);
  EXPECT_NEAR(u_value(f, Complex(0.36, 0.48)), 1.25, 1e-15);
  EXPECT_THROW(u_value(f, 1.0), DomainError);
}

TEST(UValue, InversionPostTransform) {
  // Inversion about (0,0,1) multiplies the factor by 1/(1+|z|²).
  const UField f{builtin::identity(), Inversion{{0, 0, 1}}};
  const Complex z{0.3, 0.4};
  EXPECT_NEAR(u_value(f, z), std::sqrt((1 + 0.25) / (1 - 0.25)), 1e-14);
}

TEST(UValueProperty, InvariantUnderDiskAutomorphism) {
  // 𝒰 of f∘M at z equals 𝒰 of f at M(z) since (1−|z|²)|M′| = 1−|M(z)|².
  Gen g(61);
  const MapSpec s = builtin::harmonic_power(0.95, 0.1);
  for (int k = 0; k < 30; ++k) {
    const auto m = PlanarMoebius::disk_automorphism(g.disk(0.5), g.uniform(0, 6.28));
    const MapSpec sm = compose_with_automorphism(s, m);
    const Complex z = g.disk(0.5);
    EXPECT_NEAR(u_value({sm}, z), u_value({s}, *m.apply(z)), 1e-10);
  }
}

TEST(UGrad, FormulaAndFiniteDifferences) {
  Gen g(62);
  for (const auto& s : {builtin::shear(0.3), builtin::alpha_power(0.7), builtin::harmonic_power(0.95, 0.1)}) {
    for (int k = 0; k < 30; ++k) {
      const Complex z = g.disk(0.9);
      const auto lu = [&](double dx, double dy) { return std::log(u_value({s}, z + Complex(dx, dy))); };
      const double gx = harmext::testing::fd([&](double t) { return lu(t, 0); }, 0.0, 1e-4);
      const double gy = harmext::testing::fd([&](double t) { return lu(0, t); }, 0.0, 1e-4);
      EXPECT_LT(std::abs(u_grad(s, z) - 0.5 * Complex(gx, -gy)), 1e-8) << s.label();
      EXPECT_NEAR(u_gradient_norm(s, z), std::hypot(gx, gy), 1e-8);
      const auto lg = log_u_gradient({s}, z);
      EXPECT_NEAR(lg[0], gx, 1e-8);
      EXPECT_NEAR(lg[1], gy, 1e-8);
    }
  }
}

TEST(LogUGradientProperty, PostTransformsMatchFiniteDifferences) {
  Gen g(63);
  const MapSpec s = builtin::harmonic_power(0.95, 0.1);
  for (int k = 0; k < 30; ++k) {
    const PostTransform post = (k % 2 == 0) ? PostTransform(random_space_moebius(g))
                                            : PostTransform(Inversion{Point3{g.uniform(-1, 1), g.uniform(-1, 1), 1.5}});
    const UField f{s, post};
    const Complex z = g.disk(0.8);
    const auto lu = [&](double dx, double dy) { return std::log(u_value(f, z + Complex(dx, dy))); };
    const auto lg = log_u_gradient(f, z);
    EXPECT_NEAR(lg[0], harmext::testing::fd([&](double t) { return lu(t, 0); }, 0.0, 1e-4), 1e-7);
    EXPECT_NEAR(lg[1], harmext::testing::fd([&](double t) { return lu(0, t); }, 0.0, 1e-4), 1e-7);
  }
}

TEST(Geodesic, DiameterAndEndpoints) {
  const Geodesic d(-1.0, 1.0);
  EXPECT_LT(std::abs(d.point(0.0)), 1e-15);
  EXPECT_NEAR(std::abs(d.point(0.5).imag()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.point(0.5)), std::tanh(0.5), 1e-15);
}

TEST(GeodesicProperty, UnitSpeedAndIdealEndpoints) {
  Gen g(64);
  for (int k = 0; k < 50; ++k) {
    const Complex a = g.unit(), b = g.unit();
    if (std::abs(a - b) < 1e-2) continue;
    const Geodesic geo(a, b);
    for (const double s : {-2.0, -0.3, 0.0, 1.1, 2.5}) EXPECT_NEAR(hyperbolic_speed(geo, s), 1.0, 1e-7);
    const Complex lo = geo.point(-30.0), hi = geo.point(30.0);
    const bool forward = std::abs(hi - b) < 1e-9;
    EXPECT_LT(std::abs((forward ? hi : lo) - b), 1e-9);
    EXPECT_LT(std::abs((forward ? lo : hi) - a), 1e-9);
    // s = 0 is the point of the geodesic nearest the origin.
    EXPECT_LE(std::abs(geo.point(0.0)), std::abs(geo.point(0.01)) + 1e-15);
    EXPECT_LE(std::abs(geo.point(0.0)), std::abs(geo.point(-0.01)) + 1e-15);
  }
}

TEST(Convexity, IdentityIsConvex) {
  Gen g(65);
  for (int k = 0; k < 10; ++k) {
    const MarginReport r = convexity_check({builtin::identity()}, Geodesic(g.unit(), g.unit()), 200);
    EXPECT_TRUE(r.passed);
    EXPECT_GT(r.min_margin, 0.0);
  }
}

TEST(CriticalPoint, IdentityAtOrigin) {
  const auto c = critical_point_find({builtin::identity()});
  ASSERT_TRUE(c.has_value());
  EXPECT_LT(std::abs(*c), 1e-10);
}

TEST(CriticalPoint, InversionAboveOrigin) {
  const auto c = critical_point_find({builtin::identity(), Inversion{{0, 0, 1}}});
  ASSERT_TRUE(c.has_value());
  EXPECT_LT(std::abs(*c), 1e-10);
}

TEST(CriticalPoint, MovesWithDiskAutomorphism) {
  const Complex a{0.3, -0.2};
  const auto m = PlanarMoebius::disk_automorphism(a, 0.0);
  const MapSpec s = compose_with_automorphism(builtin::shear(0.2), m);
  const auto c = critical_point_find({s});
  ASSERT_TRUE(c.has_value());
  EXPECT_LT(std::abs(*m.apply(*c)), 1e-9);
  EXPECT_TRUE(boundary_increasing({s}, 64));
}

TEST(CriticalPoint, AlphaPowerHasNone) {
  const UField f{builtin::alpha_power(1.0 / std::sqrt(2.0))};
  EXPECT_FALSE(boundary_increasing(f, 64));
  EXPECT_FALSE(critical_point_find(f).has_value());
}

TEST(CriticalPointProperty, GradientVanishes) {
  Gen g(66);
  const MapSpec s = builtin::harmonic_power(0.95, 0.1);
  for (int k = 0; k < 5; ++k) {
    const Point3 q = Point3::from_plane(g.disk(0.5)) + Point3{0, 0, g.uniform(0.5, 2.0)};
    const UField f{s, Inversion{q}};
    const auto c = critical_point_find(f);
    if (!c) continue;
    const auto lg = log_u_gradient(f, *c);
    EXPECT_LT(std::hypot(lg[0], lg[1]) * (1 - std::norm(*c)), 1e-8);
  }
}

TEST(S1Curve, LineAndCircle) {
  const CurveJet line{0.0, {}, {2, 0, 0}, {}, {}};
  EXPECT_DOUBLE_EQ(s1_curve(line), 0.0);
  const double r = 2.5;
  const CurveJet circle{0.0, {r, 0, 0}, {0, 1, 0}, {-1.0 / r, 0, 0}, {0, -1.0 / (r * r), 0}};
  EXPECT_NEAR(s1_curve(circle), 1.0 / (2 * r * r), 1e-15);
  EXPECT_THROW(s1_curve(CurveJet{}), DegenerateError);
}

TEST(S1CurveProperty, MoebiusInvariant) {
  Gen g(67);
  const MapSpec s = builtin::harmonic_power(0.95, 0.1);
  for (int k = 0; k < 30; ++k) {
    const CurveJet cj = lift_curve_jet(s, g.uniform(-0.9, 0.9));
    const SpaceMoebius t = random_space_moebius(g);
    if (space_moebius_apply(t, Extended<Point3>(cj.value)).is_infinite()) continue;
    const double a = s1_curve(cj), b = s1_curve(space_moebius_curve_jet(t, cj));
    EXPECT_NEAR(a, b, 1e-7 * std::max(1.0, std::abs(a)));
  }
}

TEST(S1Bound, AlphaPowerAttainsBound) {
  const double a = 1.0 / std::sqrt(2.0);
  const MarginReport r = s1_bound_check(builtin::alpha_power(a), 1 - a * a, 101);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(std::abs(r.min_margin), 1e-6);
  EXPECT_FALSE(s1_bound_check(builtin::alpha_power(a), 0.4, 101).passed);
}

TEST(GradBound, CompliantAndKoebe) {
  EXPECT_TRUE(grad_bound_check(builtin::identity()).passed);
  EXPECT_TRUE(grad_bound_check(builtin::harmonic_power(0.95, 0.1)).passed);
  EXPECT_FALSE(grad_bound_check(builtin::koebe()).passed);
}

TEST(QcConstants, FrozenValues) {
  const QcConstants zero = qc_constants(0.0);
  EXPECT_EQ(zero.k, 1.0);
  EXPECT_NEAR(qc_constants(0.99).kappa1, 0.99333, 0.02);
  EXPECT_NEAR(qc_constants_analytic(0.5).k, 3.0, 1e-15);
  EXPECT_NEAR(reflection_constant(0.25), 3.0, 1e-15);
  EXPECT_THROW(qc_constants(1.0), std::invalid_argument);
  EXPECT_THROW(qc_constants(-0.1), std::invalid_argument);
}

TEST(QcConstantsProperty, EpsilonSolvesEquation) {
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    const QcConstants c = qc_constants(rho);
    EXPECT_LT(std::abs(qc_h(c.epsilon) - rho), 1e-12);
    EXPECT_GT(c.k, 1.0);
    if (i > 1) EXPECT_GT(c.k, qc_constants(rho - 0.1).k);
  }
}

TEST(MeasuredDilatation, IdentityAndMoebius) {
  const SpaceMap id = [](const Point3& p) { return Extended<Point3>(p); };
  EXPECT_NEAR(measured_dilatation(id, {0.3, 0.2, 0.1}).ratio, 1.0, 1e-9);
  Gen g(68);
  for (int k = 0; k < 20; ++k) {
    const SpaceMoebius t = random_space_moebius(g);
    const SpaceMap m = [&](const Point3& p) { return space_moebius_apply(t, Extended<Point3>(p)); };
    const DilatationSample d = measured_dilatation(m, g.point(1.0));
    if (d.flagged) continue;
    EXPECT_NEAR(d.ratio, 1.0, 1e-6);
  }
  const SpaceMap stretch = [](const Point3& p) { return Extended<Point3>(Point3{2 * p.x1, p.x2, p.x3}); };
  EXPECT_NEAR(measured_dilatation(stretch, {0.1, 0.1, 0.1}).ratio, 2.0, 1e-9);
}

TEST(MeasuredDilatation, SurfaceMapOfShear) {
  const MapSpec s = builtin::shear(0.3);
  const SurfaceMap lift = [&](Complex z) { return Extended<Point3>(lift_point(s, z)); };
  EXPECT_NEAR(measured_surface_dilatation(lift, Complex(0.2, 0.1)).ratio, 1.0, 1e-8);
}

TEST(ExtensionDilatation, IdentityIsConformal) {
  Gen g(69);
  for (int k = 0; k < 20; ++k) {
    const Point3 p = g.point(2.0);
    if (std::abs(norm(p) - 1.0) < 0.05 || std::abs(p.x3) < 0.05) continue;
    EXPECT_NEAR(extension_dilatation(builtin::identity(), p).ratio, 1.0, 1e-6);
  }
}

TEST(Inclination, ShearClosedForm) {
  const MapSpec s = builtin::shear(0.09);
  EXPECT_NEAR(inclination(s, Complex(0.2, 0.3)), std::atan(0.6 / 0.91), 1e-15);
  EXPECT_EQ(inclination(builtin::identity(), 0.5), 0.0);
}

TEST(InclinationProperty, MatchesSurfaceNormal) {
  Gen g(70);
  const MapSpec s = builtin::harmonic_power(0.95, 0.3);
  for (int k = 0; k < 30; ++k) {
    const Complex z = g.disk(0.9);
    EXPECT_NEAR(inclination(s, z), std::acos(std::clamp(surface_jet(s, z).normal.x3, -1.0, 1.0)), 1e-7);
  }
}

TEST(OmegaBound, ThresholdAtQuarter) {
  const GridSpec grid{8, 16, 0.99};
  EXPECT_TRUE(omega_bound_check(builtin::shear(0.3 * 0.3), 0.25, grid).passed);
  const MarginReport bad = omega_bound_check(builtin::shear(0.34 * 0.34), 0.25, grid);
  EXPECT_FALSE(bad.passed);
  EXPECT_NEAR(bad.min_margin, 1.0 / 3.0 - 0.34, 1e-12);
}
