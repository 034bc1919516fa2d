#include "harmext/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "harmext/extension.hpp"
#include "harmext/lift.hpp"
#include "harmext/parallel.hpp"

namespace harmext {

namespace {

struct Overload {
  const Point3* w;
  double factor(std::monostate) const { return 1.0; }
  double factor(const SpaceMoebius& t) const { return space_moebius_conformal_factor(t, *w); }
  double factor(const Inversion& inv) const {
    const double n2 = norm2(*w - inv.center);
    return n2 == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / n2;
  }
  Point3 log_gradient(std::monostate) const { return {}; }
  Point3 log_gradient(const SpaceMoebius& t) const { return space_moebius_log_factor_gradient(t, *w); }
  Point3 log_gradient(const Inversion& inv) const {
    const Point3 d = *w - inv.center;
    return -2.0 * d / norm2(d);
  }
};

bool has_post(const UField& field) { return !std::holds_alternative<std::monostate>(field.post); }

double post_factor(const UField& field, const Point3& w) {
  const Overload o{&w};
  return std::visit([&](const auto& t) { return o.factor(t); }, field.post);
}

Point3 post_log_gradient(const UField& field, const Point3& w) {
  const Overload o{&w};
  return std::visit([&](const auto& t) { return o.log_gradient(t); }, field.post);
}

double log_u(const UField& field, Complex z) { return std::log(u_value(field, z)); }

}  // namespace

double u_value(const UField& field, Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("U is defined on the open unit disk");
  double e_tau = sigma_jet(field.spec, z).e_sigma;
  if (has_post(field)) e_tau *= post_factor(field, surface_jet(field.spec, z).position);
  if (!(e_tau > 0.0)) throw DegenerateError("conformal factor vanishes");
  if (std::isinf(e_tau)) return 0.0;
  return 1.0 / std::sqrt((1.0 - std::norm(z)) * e_tau);
}

Complex u_grad(const MapSpec& spec, Complex z) {
  const double r = 1.0 - std::norm(z);
  return (std::conj(z) - sigma_jet(spec, z).sigma_z * r) / (2.0 * r);
}

double u_gradient_norm(const MapSpec& spec, Complex z) { return 2.0 * std::abs(u_grad(spec, z)); }

std::array<double, 2> log_u_gradient(const UField& field, Complex z) {
  const double r = 1.0 - std::norm(z);
  if (!has_post(field)) {
    const Complex g = u_grad(field.spec, z);
    return {2.0 * g.real(), -2.0 * g.imag()};
  }
  const SurfaceJet sj = surface_jet(field.spec, z);
  const Point3 gt = post_log_gradient(field, sj.position);
  const double sx = 2.0 * sj.sigma.sigma_z.real(), sy = -2.0 * sj.sigma.sigma_z.imag();
  return {-0.5 * (-2.0 * z.real() / r + sx + dot(gt, sj.du)), -0.5 * (-2.0 * z.imag() / r + sy + dot(gt, sj.dv))};
}

Geodesic::Geodesic(Complex end_a, Complex end_b) : a_(end_a), b_(end_b) {
  if (std::abs(std::abs(end_a) - 1.0) > 1e-12 || std::abs(std::abs(end_b) - 1.0) > 1e-12)
    throw DomainError("geodesic endpoints must lie on the unit circle");
  if (std::abs(end_a - end_b) < 1e-12) throw DomainError("geodesic endpoints must differ");
  const Complex mid = end_a + end_b;
  if (std::abs(mid) < 1e-12) {
    rotation_ = -kI * end_b;
    return;
  }
  rotation_ = mid / std::abs(mid);
  const Complex eb = std::conj(rotation_) * end_b;
  shift_ = (1.0 - std::abs(eb.imag())) / eb.real();
  sign_ = eb.imag() >= 0.0 ? 1.0 : -1.0;
}

Complex Geodesic::point(double s) const {
  const Complex w = sign_ * kI * std::tanh(s);
  return rotation_ * (w + shift_) / (1.0 + shift_ * w);
}

MarginReport convexity_check(const UField& field, const Geodesic& geodesic, int samples, double s_max) {
  if (samples < 1) throw std::invalid_argument("convexity check needs at least one sample");
  const double h = samples > 1 ? 2.0 * s_max / (samples - 1) : s_max;
  std::vector<double> u(samples + 4);
  for (int k = 0; k < samples + 4; ++k) u[k] = u_value(field, geodesic.point(-s_max + (k - 2) * h));
  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 2; k < samples + 2; ++k) {
    const double d2 = (-u[k + 2] + 16.0 * u[k + 1] - 30.0 * u[k] + 16.0 * u[k - 1] - u[k - 2]) / (12.0 * h * h);
    if (d2 < rep.min_margin) {
      rep.min_margin = d2;
      rep.worst_at = -s_max + (k - 2) * h;
    }
  }
  rep.samples = samples;
  rep.passed = rep.min_margin >= -1e-6;
  return rep;
}

bool boundary_increasing(const UField& field, int radii, double r_max) {
  for (int k = 0; k < radii; ++k) {
    const double th = 2.0 * std::numbers::pi * k / radii;
    const Complex dir = std::polar(1.0, th);
    const auto g = log_u_gradient(field, r_max * dir);
    if (g[0] * dir.real() + g[1] * dir.imag() <= 0.0) return false;
  }
  return true;
}

std::optional<Complex> critical_point_find(const UField& field, const CriticalPointOptions& opts) {
  if (!boundary_increasing(field, opts.boundary_radii, opts.seed_grid.r_max)) return std::nullopt;
  const auto seeds = polar_grid(opts.seed_grid);
  std::vector<double> values(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { values[i] = u_value(field, seeds[i]); });
  Complex z = seeds[std::min_element(values.begin(), values.end()) - values.begin()];

  const auto grad = [&](Complex w) {
    const auto g = log_u_gradient(field, w);
    return Eigen::Vector2d(g[0], g[1]);
  };
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double r = 1.0 - std::norm(z);
    const Eigen::Vector2d g = grad(z);
    if (g.norm() * r < opts.gradient_tol) return z;
    const double h = 1e-5 * r;
    Eigen::Matrix2d hess;
    hess.col(0) = (grad(z + h) - grad(z - h)) / (2.0 * h);
    hess.col(1) = (grad(z + kI * h) - grad(z - kI * h)) / (2.0 * h);
    hess = 0.5 * (hess + hess.transpose()).eval();
    Eigen::Vector2d step;
    const Eigen::LLT<Eigen::Matrix2d> llt(hess);
    if (llt.info() == Eigen::Success) {
      step = -llt.solve(g);
    } else {
      step = -0.1 * r * r * g;
    }
    const double f0 = log_u(field, z);
    double lambda = 1.0;
    Complex next = z;
    bool moved = false;
    for (int k = 0; k < 60; ++k) {
      next = z + lambda * Complex(step[0], step[1]);
      if (std::abs(next) < 1.0 && log_u(field, next) <= f0 + 1e-14 * std::max(1.0, std::abs(f0))) {
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved || std::abs(next - z) < 1e-15) {
      if (grad(z).norm() * r < 1e-8) return z;
      throw ConvergenceError("critical point search stalled");
    }
    z = next;
  }
  if (grad(z).norm() * (1.0 - std::norm(z)) < 1e-8) return z;
  throw ConvergenceError("critical point search exceeded its iteration cap");
}

double s1_curve(const CurveJet& cj) {
  const double v2 = norm2(cj.d1);
  if (!(v2 > 0.0)) throw DegenerateError("curve has zero speed");
  const double a = dot(cj.d2, cj.d1);
  return dot(cj.d3, cj.d1) / v2 - 3.0 * a * a / (v2 * v2) + 1.5 * norm2(cj.d2) / v2;
}

CurveJet lift_curve_jet(const MapSpec& spec, double x) {
  const auto d = xi_derivatives(spec, x);
  return {x, lift_point(spec, x), d[0], d[1], d[2]};
}

CurveJet space_moebius_curve_jet(const SpaceMoebius& t, const CurveJet& cj) {
  const std::array<RealJet, 3> in{RealJet{cj.value.x1, cj.d1.x1, cj.d2.x1, cj.d3.x1},
                                  RealJet{cj.value.x2, cj.d1.x2, cj.d2.x2, cj.d3.x2},
                                  RealJet{cj.value.x3, cj.d1.x3, cj.d2.x3, cj.d3.x3}};
  const auto o = space_moebius_components(t, in);
  return {cj.x, {o[0].f, o[1].f, o[2].f}, {o[0].d1, o[1].d1, o[2].d1}, {o[0].d2, o[1].d2, o[2].d2},
          {o[0].d3, o[1].d3, o[2].d3}};
}

MarginReport s1_bound_check(const MapSpec& spec, double rho, int samples, double x_max) {
  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double x = samples > 1 ? -x_max + 2.0 * x_max * k / (samples - 1) : 0.0;
    const double w = 1.0 - x * x;
    const double margin = 2.0 * rho / (w * w) - s1_curve(lift_curve_jet(spec, x));
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.worst_at = x;
    }
  }
  rep.samples = samples;
  rep.passed = rep.min_margin >= -1e-6;
  return rep;
}

MarginReport grad_bound_check(const MapSpec& spec, const GridSpec& grid) {
  const auto pts = polar_grid(grid);
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = (1.0 - std::norm(pts[i])) * u_gradient_norm(spec, pts[i]);
  });
  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double margin = std::numbers::sqrt2 - vals[i];
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.worst_at = std::abs(pts[i]);
    }
  }
  rep.samples = pts.size();
  rep.passed = rep.min_margin >= -1e-9;
  return rep;
}

double qc_h(double e) { return 2.0 * e * e * e * (2.0 - e) / (3.0 * e * e - 2.0 * e + 1.0); }

QcConstants qc_constants(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  QcConstants c;
  c.rho = rho;
  if (rho > 0.0) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      (qc_h(mid) < rho ? lo : hi) = mid;
    }
    c.epsilon = 0.5 * (lo + hi);
  }
  c.kappa1 = 1.0 - (1.0 - c.epsilon) * (1.0 - c.epsilon);
  c.kappa2 = 2.0 * std::sqrt(rho);
  c.k = (1.0 + c.kappa1 + c.kappa2) / (1.0 - c.kappa1);
  return c;
}

QcConstants qc_constants_analytic(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  QcConstants c;
  c.rho = rho;
  c.kappa1 = rho;
  c.kappa2 = 0.0;
  c.k = (1.0 + rho) / (1.0 - rho);
  return c;
}

double reflection_constant(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  const double s = 1.0 + std::sqrt(rho);
  return s * s / (1.0 - rho);
}

namespace {

template <int Cols>
DilatationSample ratio_of(const Eigen::Matrix<double, 3, Cols>& j) {
  if (!j.allFinite()) return {std::numeric_limits<double>::infinity(), true};
  const Eigen::JacobiSVD<Eigen::Matrix<double, 3, Cols>> svd(j);
  const auto& s = svd.singularValues();
  const double smax = s(0), smin = s(Cols - 1);
  if (!(smin > 0.0)) return {std::numeric_limits<double>::infinity(), true};
  const double ratio = smax / smin;
  return {ratio, ratio > 1e6};
}

Eigen::Vector3d vec(const Extended<Point3>& p) {
  if (p.is_infinite()) return Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  return {p->x1, p->x2, p->x3};
}

}  // namespace

DilatationSample measured_dilatation(const SpaceMap& map, const Point3& p, double step) {
  if (!(step > 0.0)) step = 1e-4 * std::max(1.0, norm(p));
  Eigen::Matrix3d j;
  const Point3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int c = 0; c < 3; ++c) {
    const auto diff = [&](double h) -> Eigen::Vector3d { return (vec(map(p + h * axes[c])) - vec(map(p - h * axes[c]))) / (2.0 * h); };
    j.col(c) = (4.0 * diff(0.5 * step) - diff(step)) / 3.0;
  }
  return ratio_of<3>(j);
}

DilatationSample measured_surface_dilatation(const SurfaceMap& map, Complex z, double step) {
  if (!(step > 0.0)) step = 1e-4 * std::max(1.0, std::abs(z));
  Eigen::Matrix<double, 3, 2> j;
  const Complex axes[2] = {1.0, kI};
  for (int c = 0; c < 2; ++c) {
    const auto diff = [&](double h) -> Eigen::Vector3d { return (vec(map(z + h * axes[c])) - vec(map(z - h * axes[c]))) / (2.0 * h); };
    j.col(c) = (4.0 * diff(0.5 * step) - diff(step)) / 3.0;
  }
  return ratio_of<2>(j);
}

DilatationSample extension_dilatation(const MapSpec& spec, const Point3& p) {
  const double s = std::hypot(p.x1, p.x2);
  const double dist = std::hypot(s - 1.0, p.x3);
  const double step = std::min(1e-4 * std::max(1.0, norm(p)), 0.02 * dist);
  return measured_dilatation([&](const Point3& x) { return extend(spec, x); }, p, step);
}

double inclination(const MapSpec& spec, Complex z) {
  const double w = std::abs(dilatation_omega(spec, z));
  if (!(w < 1.0)) throw DomainError("inclination needs |omega| < 1");
  return std::atan(2.0 * std::sqrt(w) / (1.0 - w));
}

MarginReport omega_bound_check(const MapSpec& spec, double rho, const GridSpec& grid) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  double sup = 0.0, at = 0.0;
  for (const Complex z : polar_grid(grid)) {
    const double v = std::abs(spec.q().value(z));
    if (v > sup) {
      sup = v;
      at = std::abs(z);
    }
  }
  const double sr = std::sqrt(rho);
  MarginReport rep;
  rep.min_margin = (1.0 - sr) / (1.0 + sr) - sup;
  rep.worst_at = at;
  rep.samples = static_cast<std::size_t>(grid.radii) * grid.angles + 1;
  rep.passed = rep.min_margin > 0.0;
  return rep;
}

}  // namespace harmext
