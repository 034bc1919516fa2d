#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "harmext/complex.hpp"
#include "harmext/harmonic.hpp"
#include "harmext/map_spec.hpp"
#include "harmext/moebius.hpp"
#include "harmext/point3.hpp"

namespace harmext {

// Inversion p ↦ (p−q)/‖p−q‖².
struct Inversion {
  Point3 center{};
};

using PostTransform = std::variant<std::monostate, SpaceMoebius, Inversion>;

struct UField {
  MapSpec spec;
  PostTransform post{};
};

double u_value(const UField& field, Complex z);
// ∂_z log 𝒰f̃ = (z̄ − σ_z(1−|z|²)) / (2(1−|z|²)).
Complex u_grad(const MapSpec& spec, Complex z);
// ‖∇ log 𝒰f̃‖ = 2|∂_z log 𝒰f̃|.
double u_gradient_norm(const MapSpec& spec, Complex z);
// Real gradient (∂x, ∂y) of log 𝒰 for any post transform.
std::array<double, 2> log_u_gradient(const UField& field, Complex z);

// Hyperbolic geodesic of the disk with the given ideal endpoints,
// parametrized by arclength with s = 0 at the point nearest the origin.
class Geodesic {
 public:
  Geodesic(Complex end_a, Complex end_b);
  Complex point(double s) const;
  Complex end_a() const { return a_; }
  Complex end_b() const { return b_; }

 private:
  Complex a_, b_;
  Complex rotation_{1.0, 0.0};
  double shift_ = 0.0;
  double sign_ = 1.0;
};

struct MarginReport {
  double min_margin = 0.0;
  double worst_at = 0.0;  // parameter or |z| of the worst sample
  std::size_t samples = 0;
  bool passed = true;
};

// Second derivative of s ↦ 𝒰(γ(s)) by five-point differences on [−s_max, s_max].
MarginReport convexity_check(const UField& field, const Geodesic& geodesic, int samples, double s_max = 3.0);

struct CriticalPointOptions {
  GridSpec seed_grid{24, 48, 0.999};
  int boundary_radii = 64;
  int max_iterations = 100;
  double gradient_tol = 1e-12;
};

// Unique critical point of 𝒰 when 𝒰 increases toward ∂𝔻 along every sampled
// radius, none otherwise.  Throws ConvergenceError if Newton stalls.
std::optional<Complex> critical_point_find(const UField& field, const CriticalPointOptions& opts = {});
// Radial derivative of 𝒰 near the boundary is positive on every sampled radius.
bool boundary_increasing(const UField& field, int radii, double r_max = 0.999);

struct CurveJet {
  double x = 0.0;
  Point3 value{};
  Point3 d1{};
  Point3 d2{};
  Point3 d3{};
};

double s1_curve(const CurveJet& cj);
// Jet of x ↦ f̃(x) on the real diameter.
CurveJet lift_curve_jet(const MapSpec& spec, double x);
CurveJet space_moebius_curve_jet(const SpaceMoebius& t, const CurveJet& cj);
// S₁f̃(x) ≤ 2ρ/(1−x²)² + 1e-6 at `samples` equally spaced x in (−x_max, x_max).
MarginReport s1_bound_check(const MapSpec& spec, double rho, int samples, double x_max = 0.99);
// (1−|ζ|²)‖∇log 𝒰f̃‖ ≤ √2 + 1e-9 on the grid.
MarginReport grad_bound_check(const MapSpec& spec, const GridSpec& grid = {});

struct QcConstants {
  double rho = 0.0;
  double epsilon = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double k = 1.0;
};

double qc_h(double epsilon);
QcConstants qc_constants(double rho);
QcConstants qc_constants_analytic(double rho);
double reflection_constant(double rho);

struct DilatationSample {
  double ratio = 1.0;
  bool flagged = false;
};

using SpaceMap = std::function<Extended<Point3>(const Point3&)>;
using SurfaceMap = std::function<Extended<Point3>(Complex)>;

// step ≤ 0 selects 1e-4·max(1, ‖p‖).
DilatationSample measured_dilatation(const SpaceMap& map, const Point3& p, double step = 0.0);
// Singular-value ratio of the 3×2 Jacobian of a map from ℂ into R³.
DilatationSample measured_surface_dilatation(const SurfaceMap& map, Complex z, double step = 0.0);
// ℰf̃ dilatation with the step kept well inside the distance to ∂𝔻.
DilatationSample extension_dilatation(const MapSpec& spec, const Point3& p);

double inclination(const MapSpec& spec, Complex z);
// margin = (1−√ρ)/(1+√ρ) − sup|q|.
MarginReport omega_bound_check(const MapSpec& spec, double rho, const GridSpec& grid = {});

}  // namespace harmext
