#pragma once

#include <array>
#include <cmath>

#include "harmext/complex.hpp"
#include "harmext/jet.hpp"
#include "harmext/point3.hpp"

namespace harmext {

// z ↦ (az+b)/(cz+d), coefficients rescaled so the largest has modulus 1.
class PlanarMoebius {
 public:
  // Throws DegenerateError when |ad−bc| < 1e-14 after rescaling.
  PlanarMoebius(Complex a, Complex b, Complex c, Complex d);

  static PlanarMoebius identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static PlanarMoebius translation(Complex b) { return {1.0, b, 0.0, 1.0}; }
  // e^{iθ}(z − a)/(1 − āz), |a| < 1.
  static PlanarMoebius disk_automorphism(Complex a, double theta);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }

  Extended<Complex> apply(const Extended<Complex>& z) const;
  Complex derivative(Complex z) const;
  Jet jet(Complex z) const;
  PlanarMoebius inverse() const { return {d_, -b_, -c_, a_}; }

 private:
  Complex a_, b_, c_, d_;
};

// outer∘inner
PlanarMoebius compose(const PlanarMoebius& outer, const PlanarMoebius& inner);

Extended<Complex> moebius_apply(const PlanarMoebius& m, Complex z);

inline double value_of(double x) { return x; }
inline double value_of(const RealJet& x) { return x.f; }

// Poincaré extension in real arithmetic so that it also propagates real jets.
// The lower half-space is handled by mirror symmetry in x3.
template <class S>
std::array<S, 3> poincare_extend_components(const PlanarMoebius& m, const S& x1, const S& x2, const S& x3) {
  const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double sign = value_of(x3) < 0.0 ? -1.0 : 1.0;
  const S t = x3 * sign;
  const S u_re = x1 * a.real() - x2 * a.imag() + b.real();
  const S u_im = x2 * a.real() + x1 * a.imag() + b.imag();
  const S v_re = x1 * c.real() - x2 * c.imag() + d.real();
  const S v_im = x2 * c.real() + x1 * c.imag() + d.imag();
  const Complex ac = a * std::conj(c);
  const S t2 = t * t;
  const S den = v_re * v_re + v_im * v_im + t2 * std::norm(c);
  const S num_re = u_re * v_re + u_im * v_im + t2 * ac.real();
  const S num_im = u_im * v_re - u_re * v_im + t2 * ac.imag();
  const S inv = 1.0 / den;
  return {num_re * inv, num_im * inv, t * inv * (std::abs(m.det()) * sign)};
}

Extended<Point3> poincare_extend(const PlanarMoebius& m, const Point3& p);
Extended<Point3> poincare_extend(const PlanarMoebius& m, const Extended<Point3>& p);

// Conformal factor ‖D ext(M)‖ at p.
double poincare_conformal_factor(const PlanarMoebius& m, const Point3& p);

// (p−q)/‖p−q‖²
Extended<Point3> invert_about(const Point3& q, const Point3& p);
// p/‖p‖²
Extended<Point3> sphere_inversion_J(const Point3& p);

// output ∘ ext(planar) ∘ input⁻¹.  The input frame defaults to the standard one,
// in which case the restriction to ℂ is output∘planar.
struct SpaceMoebius {
  PlanarMoebius planar = PlanarMoebius::identity();
  Frame frame{};
  Frame input{};
};

template <class S>
std::array<S, 3> space_moebius_components(const SpaceMoebius& t, const std::array<S, 3>& p) {
  const Frame& in = t.input;
  const Point3& o = in.origin();
  const double is = 1.0 / in.scale();
  const S y1 = (p[0] - o.x1) * is, y2 = (p[1] - o.x2) * is, y3 = (p[2] - o.x3) * is;
  const auto loc = [&](const Point3& e) { return y1 * e.x1 + y2 * e.x2 + y3 * e.x3; };
  const auto x = poincare_extend_components(t.planar, loc(in.e1()), loc(in.e2()), loc(in.e3()));
  const Frame& f = t.frame;
  const double s = f.scale();
  const auto world = [&](double oc, double c1, double c2, double c3) {
    return (x[0] * c1 + x[1] * c2 + x[2] * c3) * s + oc;
  };
  return {world(f.origin().x1, f.e1().x1, f.e2().x1, f.e3().x1),
          world(f.origin().x2, f.e1().x2, f.e2().x2, f.e3().x2),
          world(f.origin().x3, f.e1().x3, f.e2().x3, f.e3().x3)};
}

Extended<Point3> space_moebius_apply(const SpaceMoebius& t, const Point3& p);
Extended<Point3> space_moebius_apply(const SpaceMoebius& t, const Extended<Point3>& p);
double space_moebius_conformal_factor(const SpaceMoebius& t, const Point3& p);
// ∇ log ‖DT‖ at p, in world coordinates.
Point3 space_moebius_log_factor_gradient(const SpaceMoebius& t, const Point3& p);

// Distance in the upper half-space model over the plane x3 = 0.
double hyperbolic_distance(const Point3& p, const Point3& q);

}  // namespace harmext
