#include "harmext/extension.hpp"

#include <cmath>
#include <limits>

namespace harmext {

namespace {

constexpr double kNearPole = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_disk(Complex zeta) {
  if (!(std::abs(zeta) < 1.0)) throw DomainError("base point must lie in the open unit disk");
}

}  // namespace

Extended<Complex> bma_m(const SigmaJet& s, Complex z, Complex zeta) {
  const Complex w = z - zeta;
  const Complex den = 1.0 - s.sigma_z * w;
  if (std::abs(den) < kNearPole) return Extended<Complex>::infinity();
  return w / den;
}

Extended<Complex> bma_m(const MapSpec& spec, Complex z, Complex zeta) {
  require_disk(zeta);
  return bma_m(sigma_jet(spec, zeta), z, zeta);
}

Extended<Complex> bma_m_star(const SigmaJet& s, Complex zeta) {
  const double r = 1.0 - std::norm(zeta);
  const Complex den = std::conj(zeta) - s.sigma_z * r;
  const double az = std::abs(zeta);
  if (az > 0.0 ? std::abs(den) < kNearPole * az : std::abs(den) < kNearPole) return Extended<Complex>::infinity();
  return r / den;
}

PlanarMoebius bma_moebius(const SigmaJet& s, Complex zeta) {
  return {1.0, -zeta, -s.sigma_z, 1.0 + s.sigma_z * zeta};
}

Extended<Point3> bma_plane(const SurfaceJet& sj, const Extended<Complex>& m) {
  if (m.is_infinite()) return Extended<Point3>::infinity();
  return sj.position + m->real() * sj.du + m->imag() * sj.dv;
}

Extended<Point3> bma_plane(const MapSpec& spec, Complex z, Complex zeta) {
  require_disk(zeta);
  const SurfaceJet sj = surface_jet(spec, zeta);
  return bma_plane(sj, bma_m(sj.sigma, z, zeta));
}

SpaceMoebius bma_space_moebius(const SurfaceJet& sj) {
  const double es = sj.sigma.e_sigma;
  return {bma_moebius(sj.sigma, sj.z), Frame(sj.position, sj.du / es, sj.dv / es, sj.normal, es), Frame::standard()};
}

Extended<Point3> bma_space(const SurfaceJet& sj, const Extended<Point3>& p) {
  if (p.is_finite() && p->x3 == 0.0) return bma_plane(sj, bma_m(sj.sigma, p->planar(), sj.z));
  return space_moebius_apply(bma_space_moebius(sj), p);
}

Extended<Point3> bma_space(const MapSpec& spec, const Point3& p, Complex zeta) {
  require_disk(zeta);
  return bma_space(surface_jet(spec, zeta), p);
}

CircleFiber circle_of(const Point3& p) {
  if (!p.finite()) throw DomainError("point must be finite");
  if (p.x3 == 0.0) {
    const double r = std::abs(p.planar());
    if (std::abs(r - 1.0) < 1e-14) throw DomainError("points of the unit circle have no fiber");
    if (r < 1.0) return {p.planar(), -kInf, false};
    return {1.0 / std::conj(p.planar()), kInf, false};
  }
  const bool lower = p.x3 < 0.0;
  const double h = std::abs(p.x3);
  const double s = std::hypot(p.x1, p.x2);
  if (s == 0.0) return {0.0, 0.5 * std::log(h), lower};
  const double bm2 = ((s - 1.0) * (s - 1.0) + h * h) / s;
  const double b = 2.0 + bm2;
  const double u = 2.0 / (b + std::sqrt(bm2 * (b + 2.0)));
  const Complex zeta = u * Complex(p.x1, p.x2) / s;
  // e^{2t} from either side of the circle, whichever avoids cancellation.
  const double near = s - u, far = 1.0 - u * s;
  const double y = (u * near <= far) ? h / far : near / (u * h);
  return {zeta, 0.5 * std::log(y), lower};
}

CircleFiber circle_of(const Extended<Point3>& p) {
  if (p.is_infinite()) return {0.0, kInf, false};
  return circle_of(*p);
}

Point3 fiber_point(Complex zeta, double t) {
  require_disk(zeta);
  const double y = std::exp(2.0 * t);
  const double e = y * y;
  const double den = 1.0 + e * std::norm(zeta);
  return {(1.0 + e) * zeta.real() / den, (1.0 + e) * zeta.imag() / den, y * (1.0 - std::norm(zeta)) / den};
}

double fiber_conformal_factor(Complex zeta, double t) {
  const double e = std::exp(4.0 * t);
  return (1.0 + e) / (1.0 + e * std::norm(zeta));
}

double horosphere_radius(Complex zeta, double t) { return 0.5 * std::exp(2.0 * t) * (1.0 - std::norm(zeta)); }

Extended<Point3> extend(const MapSpec& spec, const Point3& p) {
  if (p.x3 == 0.0) {
    const Complex z = p.planar();
    const double r = std::abs(z);
    if (std::abs(r - 1.0) < 1e-14) throw DomainError("the unit circle is excluded from the extension");
    if (r < 1.0) return surface_jet(spec, z).position;
    const Complex zeta = 1.0 / std::conj(z);
    const SurfaceJet sj = surface_jet(spec, zeta);
    return bma_plane(sj, bma_m(sj.sigma, z, zeta));
  }
  return bma_space(surface_jet(spec, circle_of(p).zeta), Extended<Point3>(p));
}

Extended<Point3> extend(const MapSpec& spec, const Extended<Point3>& p) {
  if (p.is_finite()) return extend(spec, *p);
  return bma_space(surface_jet(spec, 0.0), p);
}

Extended<Point3> reflect(const MapSpec& spec, Complex zeta) {
  require_disk(zeta);
  const SurfaceJet sj = surface_jet(spec, zeta);
  return bma_plane(sj, bma_m_star(sj.sigma, zeta));
}

Extended<Point3> reflect_intrinsic(const MapSpec& spec, Complex zeta) {
  require_disk(zeta);
  const SurfaceJet sj = surface_jet(spec, zeta);
  const double r = 1.0 - std::norm(zeta);
  const Complex den = std::conj(zeta) - sj.sigma.sigma_z * r;
  const double az = std::abs(zeta);
  if (az > 0.0 ? std::abs(den) < kNearPole * az : std::abs(den) < kNearPole) return Extended<Point3>::infinity();
  // ∂_z log(λ_Σ∘f̃) = 2 ∂_z log 𝒰f̃, turned into a tangent vector of Σ.
  const Complex lz = den / r;
  const double e2 = sj.sigma.e_sigma * sj.sigma.e_sigma;
  const Point3 grad = (2.0 * lz.real() * sj.du - 2.0 * lz.imag() * sj.dv) / e2;
  const auto j = sphere_inversion_J(grad);
  if (j.is_infinite()) return j;
  return sj.position + 2.0 * *j;
}

Extended<Complex> planar_extend(const MapSpec& spec, Complex zeta) {
  if (std::abs(zeta) <= 1.0) return harmonic_value(spec, zeta);
  const Complex zs = 1.0 / std::conj(zeta);
  const SurfaceJet sj = surface_jet(spec, zs);
  const double r = 1.0 - std::norm(zs);
  const Complex den = std::conj(zs) - r * sj.sigma.sigma_z;
  if (std::abs(den) < kNearPole * std::abs(zs)) return Extended<Complex>::infinity();
  const Complex den_bar = zs - r * sj.sigma.sigma_zbar;
  const Complex f = sj.position.planar();
  return f + r * sj.h_prime / den + r * std::conj(sj.g_prime) / den_bar;
}

Extended<Complex> classical_aw(const MapSpec& spec, Complex z) {
  if (!spec.is_analytic()) throw std::invalid_argument("classical extension needs an analytic map (q = 0)");
  if (!(std::abs(z) > 1.0)) throw DomainError("classical extension is evaluated outside the closed disk");
  const Complex zeta = 1.0 / std::conj(z);
  const Jet hp = spec.h_prime().jet(zeta);
  if (std::abs(hp.f) < 1e-14) throw DegenerateError("f' vanishes");
  const double r = 1.0 - std::norm(zeta);
  const Complex den = std::conj(zeta) - 0.5 * r * hp.d1 / hp.f;
  if (std::abs(den) < kNearPole * std::abs(zeta)) return Extended<Complex>::infinity();
  return harmonic_value(spec, zeta) + r * hp.f / den;
}

std::pair<StereoPoint, Point3> stereo_project(const SurfaceJet& sj, Complex q_plane, double a) {
  if (!(a > 0.0)) throw DomainError("horosphere radius must be positive");
  StereoPoint sp;
  sp.a = a;
  sp.r = 0.5 * std::abs(q_plane);
  sp.phi = std::atan2(sp.r, a);
  const double c2 = std::cos(sp.phi) * std::cos(sp.phi);
  const double s2 = std::sin(sp.phi) * std::sin(sp.phi);
  const double es = sj.sigma.e_sigma;
  const Point3 tangent = (q_plane.real() * sj.du + q_plane.imag() * sj.dv) / es;
  return {sp, sj.position + c2 * tangent + 2.0 * a * s2 * sj.normal};
}

std::vector<Extended<Point3>> image_fiber_samples(const MapSpec& spec, Complex zeta, int n) {
  const SurfaceJet sj = surface_jet(spec, zeta);
  const int up = n / 2, low = n - up;
  std::vector<Extended<Point3>> out;
  out.reserve(n);
  const auto arc = [&](int count, double sign) {
    for (int k = 0; k < count; ++k) {
      const double t = count > 1 ? -4.0 + 8.0 * k / (count - 1) : 0.0;
      Point3 p = fiber_point(zeta, t);
      p.x3 *= sign;
      out.push_back(bma_space(sj, Extended<Point3>(p)));
    }
  };
  arc(up, 1.0);
  arc(low, -1.0);
  return out;
}

}  // namespace harmext
