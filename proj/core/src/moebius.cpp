#include "harmext/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace harmext {

namespace {

constexpr double kPoleTol = 1e-300;

double planar_den(const PlanarMoebius& m, const Point3& x) {
  const Complex v = m.c() * x.planar() + m.d();
  return std::norm(v) + std::norm(m.c()) * x.x3 * x.x3;
}

}  // namespace

PlanarMoebius::PlanarMoebius(Complex a, Complex b, Complex c, Complex d) {
  const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(m > 0.0) || !std::isfinite(m)) throw DegenerateError("Moebius coefficients must be finite and not all zero");
  a_ = a / m;
  b_ = b / m;
  c_ = c / m;
  d_ = d / m;
  if (std::abs(det()) < 1e-14) throw DegenerateError("Moebius coefficients satisfy ad - bc = 0");
}

PlanarMoebius PlanarMoebius::disk_automorphism(Complex a, double theta) {
  if (!(std::abs(a) < 1.0)) throw DomainError("disk automorphism needs |a| < 1");
  const Complex rot = std::polar(1.0, theta);
  return {rot, -rot * a, -std::conj(a), 1.0};
}

Extended<Complex> PlanarMoebius::apply(const Extended<Complex>& z) const {
  if (z.is_infinite()) {
    if (std::abs(c_) < kPoleTol) return Extended<Complex>::infinity();
    return a_ / c_;
  }
  const Complex den = c_ * *z + d_;
  if (std::abs(den) < kPoleTol) return Extended<Complex>::infinity();
  return (a_ * *z + b_) / den;
}

Complex PlanarMoebius::derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  return det() / (den * den);
}

Jet PlanarMoebius::jet(Complex z) const {
  const Jet w = Jet::variable(z);
  return (a_ * w + b_) / (c_ * w + d_);
}

PlanarMoebius compose(const PlanarMoebius& outer, const PlanarMoebius& inner) {
  return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
          outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d()};
}

Extended<Complex> moebius_apply(const PlanarMoebius& m, Complex z) { return m.apply(z); }

Extended<Point3> poincare_extend(const PlanarMoebius& m, const Point3& p) {
  if (planar_den(m, p) < kPoleTol) return Extended<Point3>::infinity();
  const auto x = poincare_extend_components(m, p.x1, p.x2, p.x3);
  return Point3{x[0], x[1], x[2]};
}

Extended<Point3> poincare_extend(const PlanarMoebius& m, const Extended<Point3>& p) {
  if (p.is_finite()) return poincare_extend(m, *p);
  if (std::abs(m.c()) < kPoleTol) return Extended<Point3>::infinity();
  return Point3::from_plane(m.a() / m.c());
}

double poincare_conformal_factor(const PlanarMoebius& m, const Point3& p) {
  return std::abs(m.det()) / planar_den(m, p);
}

Extended<Point3> invert_about(const Point3& q, const Point3& p) {
  const Point3 d = p - q;
  const double n2 = norm2(d);
  if (n2 < kPoleTol) return Extended<Point3>::infinity();
  return d / n2;
}

Extended<Point3> sphere_inversion_J(const Point3& p) { return invert_about(Point3{}, p); }

Extended<Point3> space_moebius_apply(const SpaceMoebius& t, const Point3& p) {
  const auto y = poincare_extend(t.planar, t.input.to_local(p));
  if (y.is_infinite()) return y;
  return t.frame.to_world(*y);
}

Extended<Point3> space_moebius_apply(const SpaceMoebius& t, const Extended<Point3>& p) {
  if (p.is_finite()) return space_moebius_apply(t, *p);
  const auto y = poincare_extend(t.planar, Extended<Point3>::infinity());
  if (y.is_infinite()) return y;
  return t.frame.to_world(*y);
}

double space_moebius_conformal_factor(const SpaceMoebius& t, const Point3& p) {
  return t.frame.scale() * poincare_conformal_factor(t.planar, t.input.to_local(p)) / t.input.scale();
}

Point3 space_moebius_log_factor_gradient(const SpaceMoebius& t, const Point3& p) {
  const Point3 x = t.input.to_local(p);
  const Complex c = t.planar.c();
  const Complex v = c * x.planar() + t.planar.d();
  const double den = std::norm(v) + std::norm(c) * x.x3 * x.x3;
  const Complex vc = std::conj(v) * c;
  const Point3 grad_x{-2.0 * vc.real() / den, 2.0 * vc.imag() / den, -2.0 * std::norm(c) * x.x3 / den};
  return t.input.rotate(grad_x) / t.input.scale();
}

double hyperbolic_distance(const Point3& p, const Point3& q) {
  return std::acosh(1.0 + norm2(p - q) / (2.0 * p.x3 * q.x3));
}

}  // namespace harmext
