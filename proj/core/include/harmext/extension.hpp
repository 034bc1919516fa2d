#pragma once

#include <utility>
#include <vector>

#include "harmext/complex.hpp"
#include "harmext/lift.hpp"
#include "harmext/map_spec.hpp"
#include "harmext/moebius.hpp"
#include "harmext/point3.hpp"

namespace harmext {

// Fiber of the model bundle through a point.  t = −∞ marks the base point ζ
// itself, t = +∞ its reflection ζ* = 1/ζ̄; lower marks the arc below ℂ.
struct CircleFiber {
  Complex zeta{};
  double t = 0.0;
  bool lower = false;
};

struct StereoPoint {
  double phi = 0.0;
  double r = 0.0;
  double a = 0.0;
};

// m(z,ζ) = (z−ζ)/(1 − σ_z(ζ)(z−ζ)); infinity when |1 − σ_z(z−ζ)| < 1e-12.
Extended<Complex> bma_m(const MapSpec& spec, Complex z, Complex zeta);
Extended<Complex> bma_m(const SigmaJet& s, Complex z, Complex zeta);
// m(ζ*, ζ) = (1−|ζ|²)/(ζ̄ − σ_z(1−|ζ|²)), valid at ζ = 0 as well.
Extended<Complex> bma_m_star(const SigmaJet& s, Complex zeta);
PlanarMoebius bma_moebius(const SigmaJet& s, Complex zeta);

Extended<Point3> bma_plane(const MapSpec& spec, Complex z, Complex zeta);
Extended<Point3> bma_plane(const SurfaceJet& sj, const Extended<Complex>& m);
Extended<Point3> bma_space(const MapSpec& spec, const Point3& p, Complex zeta);
Extended<Point3> bma_space(const SurfaceJet& sj, const Extended<Point3>& p);
SpaceMoebius bma_space_moebius(const SurfaceJet& sj);

// Throws DomainError on the unit circle of ℂ.
CircleFiber circle_of(const Point3& p);
CircleFiber circle_of(const Extended<Point3>& p);
Point3 fiber_point(Complex zeta, double t);
double fiber_conformal_factor(Complex zeta, double t);
double horosphere_radius(Complex zeta, double t);

Extended<Point3> extend(const MapSpec& spec, const Point3& p);
Extended<Point3> extend(const MapSpec& spec, const Extended<Point3>& p);

Extended<Point3> reflect(const MapSpec& spec, Complex zeta);
Extended<Point3> reflect_intrinsic(const MapSpec& spec, Complex zeta);

// F on ℂ: f inside the closed disk, the reflected formula outside.
Extended<Complex> planar_extend(const MapSpec& spec, Complex zeta);
// Requires an analytic spec; z outside the closed disk.
Extended<Complex> classical_aw(const MapSpec& spec, Complex z);

// Point over q_plane (tangent-plane coordinates at sj) on the horosphere of radius a.
std::pair<StereoPoint, Point3> stereo_project(const SurfaceJet& sj, Complex q_plane, double a);

// n points of the image fiber C_w̃ = ℳ(C_ζ, ζ), spread over both arcs.
std::vector<Extended<Point3>> image_fiber_samples(const MapSpec& spec, Complex zeta, int n);

}  // namespace harmext
