#include "harmext/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "harmext/errors.hpp"
#include "harmext/extension.hpp"
#include "harmext/lift.hpp"
#include "harmext/parallel.hpp"

namespace harmext {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_guaranteed: return "not_guaranteed";
  }
  return "unknown";
}

bool within_hypothesis(double rho) { return rho < 1.0 - 1e-9; }

bool VerificationReport::any_guaranteed_failure() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::fail; });
}

bool VerificationReport::any_warning() const {
  return !in_hypothesis || std::any_of(checks.begin(), checks.end(), [](const CheckRecord& c) {
           return c.status == CheckStatus::not_guaranteed;
         });
}

Complex sample_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

std::vector<Point3> sample_space_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> out;
  out.reserve(n);
  while (out.size() < n) {
    const Complex c = sample_disk(rng, 3.0);
    const double h = std::pow(10.0, -3.0 + 6.0 * u(rng));
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    out.push_back({c.real(), c.imag(), sign * h});
  }
  return out;
}

double dilatation_bound(const MapSpec& spec, double rho) {
  return spec.is_analytic() ? qc_constants_analytic(rho).k : qc_constants(rho).k;
}

DilatationSweep dilatation_sweep(const MapSpec& spec, const std::vector<Point3>& points) {
  DilatationSweep out;
  out.samples.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      out.samples[i] = extension_dilatation(spec, points[i]);
    } catch (const std::domain_error&) {
      out.samples[i] = {std::numeric_limits<double>::infinity(), true};
    }
  });
  double sum = 0.0;
  std::size_t counted = 0;
  out.max = 1.0;
  for (const auto& s : out.samples) {
    if (s.flagged) {
      ++out.flagged;
      continue;
    }
    out.max = std::max(out.max, s.ratio);
    sum += s.ratio;
    ++counted;
  }
  out.mean = counted ? sum / counted : 1.0;
  return out;
}

double contact_log_ratio(const MapSpec& spec, Complex zeta, Complex dir, double t) {
  const SurfaceJet sj = surface_jet(spec, zeta);
  const auto residual = [&](double tau) {
    const Complex z = zeta + tau * dir;
    const Point3 chord = tangential_project(sj, lift_point(spec, z) - sj.position);
    const auto m = bma_plane(sj, bma_m(sj.sigma, z, zeta));
    return norm(chord - (m.value() - sj.position));
  };
  const double r1 = residual(t), r2 = residual(0.5 * t);
  const double floor = 1e-12 * t * sj.sigma.e_sigma;
  if (r1 < floor && r2 < floor) return 3.0;
  return std::log2(r1 / r2);
}

double image_fiber_distance(const MapSpec& spec, Complex zeta, const Point3& p) {
  const SurfaceJet sj = surface_jet(spec, zeta);
  const Point3 v = p - sj.position;
  const auto r = reflect(spec, zeta);
  if (r.is_infinite()) return norm(v - dot(v, sj.normal) * sj.normal);
  const Point3 d = *r - sj.position;
  const double radius = 0.5 * norm(d);
  Point3 n = cross(d, sj.normal);
  n = n / norm(n);
  const Point3 w = v - 0.5 * d;
  const double off = dot(w, n);
  const double in = norm(w - off * n);
  return std::hypot(off, in - radius);
}

double chordal_distance(Complex a, Complex b) {
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

double planar_boundary_jump(const MapSpec& spec, int angles) {
  double worst = 0.0;
  for (int j = 0; j < angles; ++j) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * j / angles);
    const auto out = planar_extend(spec, 1.001 * e);
    const Complex in = harmonic_value(spec, 0.999 * e);
    const double jump = out.is_infinite() ? 1.0 / std::sqrt(1.0 + std::norm(in)) : chordal_distance(*out, in);
    const double rate = chordal_distance(in, harmonic_value(spec, 0.998 * e)) / 1e-3;
    worst = std::max(worst, jump / std::max(1.0, rate));
  }
  return worst;
}

namespace {

// Internal result of a check body.
struct Outcome {
  double margin = 0.0;
  bool passed = true;
  bool applicable = true;
  std::string detail;
};

struct Context {
  const MapSpec& spec;
  double rho;
  const VerifyOptions& opts;
  std::mt19937_64 rng;
};

using Body = std::function<Outcome(Context&)>;

std::string fmt(const char* label, double v) {
  std::ostringstream os;
  os.precision(6);
  os << label << '=' << v;
  return os.str();
}

Point3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Point3 v{g(rng), g(rng), g(rng)};
    const double n = norm(v);
    if (n > 1e-6) return v / n;
  }
}

Frame random_frame(std::mt19937_64& rng, const Point3& origin, double scale) {
  const Point3 e1 = random_unit(rng);
  Point3 e2 = random_unit(rng);
  e2 = e2 - dot(e2, e1) * e1;
  while (norm(e2) < 1e-3) {
    e2 = random_unit(rng);
    e2 = e2 - dot(e2, e1) * e1;
  }
  e2 = e2 / norm(e2);
  return Frame(origin, e1, e2, cross(e1, e2), scale);
}

// Post transform whose pole lies on a bundle fiber away from Σ.
PostTransform random_post_transform(const MapSpec& spec, std::mt19937_64& rng, bool inversion) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const Complex zeta = sample_disk(rng, 0.8);
    Point3 p = fiber_point(zeta, -2.0 + 4.0 * u(rng));
    if (u(rng) < 0.5) p.x3 = -p.x3;
    const auto q = extend(spec, p);
    if (q.is_infinite()) continue;
    if (inversion) return Inversion{*q};
    const Complex a = sample_disk(rng, 1.0);
    const Complex b = std::polar(0.5 + 1.5 * u(rng), 2.0 * std::numbers::pi * u(rng));
    SpaceMoebius t{PlanarMoebius(a, b, 1.0, 0.0), random_frame(rng, {u(rng), u(rng), u(rng)}, 0.5 + 1.5 * u(rng)),
                   random_frame(rng, *q, 1.0)};
    return t;
  }
}

Geodesic random_geodesic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (;;) {
    const Complex a = std::polar(1.0, u(rng)), b = std::polar(1.0, u(rng));
    if (std::abs(a - b) > 1e-3) return Geodesic(a, b);
  }
}

Outcome check_condition(Context& c) {
  Outcome o;
  o.margin = 1.0 - c.rho;
  o.passed = within_hypothesis(c.rho);
  o.detail = fmt("rho", c.rho);
  if (!o.passed) o.detail += " condition violated";
  return o;
}

Outcome check_conformality(Context& c) {
  const auto pts = polar_grid(c.opts.grid);
  std::vector<double> worst(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const SurfaceJet sj = surface_jet(c.spec, pts[i]);
    const double e2 = sj.sigma.e_sigma * sj.sigma.e_sigma;
    worst[i] = std::max({std::abs(norm2(sj.du) - e2) / e2, std::abs(norm2(sj.dv) - e2) / e2,
                         std::abs(dot(sj.du, sj.dv)) / e2, std::abs(norm(sj.normal) - 1.0),
                         std::abs(sj.alpha11 + sj.alpha22) / e2});
  });
  const double w = *std::max_element(worst.begin(), worst.end());
  const double tol = 1e-9 * c.opts.tol_scale;
  return {tol - w, w <= tol, true, fmt("max_relative_residual", w)};
}

Outcome check_curvature_identity(Context& c) {
  const auto pts = polar_grid(c.opts.grid);
  std::vector<double> rel(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const SurfaceJet sj = surface_jet(c.spec, pts[i]);
    const double e2 = sj.sigma.e_sigma * sj.sigma.e_sigma;
    const double lhs = sj.alpha11 * sj.alpha11 + sj.alpha12 * sj.alpha12;
    const double rhs = e2 * e2 * std::abs(curvature(sj.sigma));
    rel[i] = std::abs(lhs - rhs) / std::max(rhs, 1e-12 * e2 * e2);
  });
  const double w = *std::max_element(rel.begin(), rel.end());
  const double tol = 1e-7 * c.opts.tol_scale;
  return {tol - w, w <= tol, true, fmt("max_relative_residual", w)};
}

Outcome check_second_partials(Context& c) {
  double worst = 0.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.9);
    const double h = 1e-4 * (1.0 - std::abs(z));
    const SurfaceJet sj = surface_jet_uncached(c.spec, z);
    const Point3 fd = (surface_jet_uncached(c.spec, z + h).du - surface_jet_uncached(c.spec, z - h).du) / (2.0 * h);
    const double sx = 2.0 * sj.sigma.sigma_z.real(), sy = -2.0 * sj.sigma.sigma_z.imag();
    const Point3 model = sj.alpha11 * sj.normal + sx * sj.du - sy * sj.dv;
    const double scale = sj.sigma.e_sigma * (1.0 + 2.0 * std::abs(sj.sigma.sigma_z)) + std::hypot(sj.alpha11, sj.alpha12);
    worst = std::max(worst, norm(fd - model) / scale);
  }
  const double tol = 1e-6 * c.opts.tol_scale;
  return {tol - worst, worst <= tol, true, fmt("max_scaled_residual", worst)};
}

Outcome check_convexity(Context& c) {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;
  for (int g = 0; g < c.opts.geodesics; ++g) {
    UField field{c.spec, {}};
    if (g < c.opts.post_transforms) field.post = random_post_transform(c.spec, c.rng, g % 2 == 0);
    const Geodesic geo = random_geodesic(c.rng);
    const MarginReport rep = convexity_check(field, geo, c.opts.geodesic_samples);
    if (rep.min_margin < worst) {
      worst = rep.min_margin;
      where = "geodesic " + std::to_string(g) + " " + fmt("s", rep.worst_at);
    }
  }
  return {worst, worst >= -1e-6 * c.opts.tol_scale, true, fmt("min_second_derivative", worst) + " at " + where};
}

Outcome check_gradient_bound(Context& c) {
  const MarginReport rep = grad_bound_check(c.spec, c.opts.grid);
  return {rep.min_margin, rep.min_margin >= -1e-9 * c.opts.tol_scale, true, fmt("worst_radius", rep.worst_at)};
}

Outcome check_s1_bound(Context& c) {
  const MarginReport rep = s1_bound_check(c.spec, std::min(c.rho, 1.0), c.opts.samples);
  return {rep.min_margin, rep.min_margin >= -1e-6 * c.opts.tol_scale, true, fmt("worst_x", rep.worst_at)};
}

Outcome check_contact_order(Context& c) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0, worst_ratio = 3.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex zeta = sample_disk(c.rng, 0.6);
    const double r = contact_log_ratio(c.spec, zeta, std::polar(1.0, u(c.rng)));
    if (!(std::abs(r - 3.0) <= worst)) {
      worst = std::isfinite(r) ? std::abs(r - 3.0) : std::numeric_limits<double>::infinity();
      worst_ratio = r;
    }
  }
  return {0.2 - worst, worst <= 0.2, true, fmt("worst_log2_ratio", worst_ratio)};
}

Outcome check_frozen_basepoint(Context& c) {
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.8);
    const double es = sigma_jet(c.spec, z).e_sigma;
    for (const Complex dir : {Complex(1.0), kI}) {
      const Point3 d = (bma_plane(c.spec, z, z + h * dir).value() - bma_plane(c.spec, z, z - h * dir).value()) / (2.0 * h);
      worst = std::max(worst, norm(d) / es);
    }
  }
  const double tol = 1e-5 * c.opts.tol_scale;
  return {tol - worst, worst <= tol, true, fmt("max_scaled_derivative", worst)};
}

Outcome check_frozen_conformal_factor(Context& c) {
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.8);
    const auto factor = [&](Complex zeta) {
      const SigmaJet s = sigma_jet(c.spec, zeta);
      return s.e_sigma / std::norm(1.0 - s.sigma_z * (z - zeta));
    };
    const double es = sigma_jet(c.spec, z).e_sigma;
    for (const Complex dir : {Complex(1.0), kI}) {
      const double d = (factor(z + h * dir) - factor(z - h * dir)) / (2.0 * h);
      worst = std::max(worst, std::abs(d) / es);
    }
  }
  const double tol = 1e-5 * c.opts.tol_scale;
  return {tol - worst, worst <= tol, true, fmt("max_scaled_derivative", worst)};
}

// Measured basepoint derivative of ℳf̃(z, ·) against its tangential and
// normal bounds; eta selects the η direction and the C′ bound.
Outcome partial_m(Context& c, bool eta) {
  const double h = 1e-5;
  double worst = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex zeta = sample_disk(c.rng, 0.7);
    const Complex z = zeta + sample_disk(c.rng, 0.5 * (1.0 - std::abs(zeta)));
    const SurfaceJet sj = surface_jet(c.spec, zeta);
    const auto m = bma_m(sj.sigma, z, zeta);
    if (m.is_infinite() || std::abs(*m) > 10.0) continue;
    const Complex dir = eta ? kI : Complex(1.0);
    const auto a = bma_plane(c.spec, z, zeta + h * dir), b = bma_plane(c.spec, z, zeta - h * dir);
    if (a.is_infinite() || b.is_infinite()) continue;
    const Point3 d = (*a - *b) / (2.0 * h);
    const double vn = dot(d, sj.normal);
    const double vt = norm(d - vn * sj.normal);
    const double es = sj.sigma.e_sigma;
    const Complex S = schwarzian(sj.sigma);
    const double ek = es * es * std::abs(curvature(sj.sigma));  // e^{2σ}|K|
    const double m2 = std::norm(*m);
    const double bound_t = eta ? es * m2 * std::abs(0.5 * S + 0.25 * es * es * curvature(sj.sigma))
                               : 0.5 * es * m2 * (std::abs(S) + 0.5 * ek);
    const double bound_n = es * std::abs(*m) * std::sqrt(ek);
    const double slack = 1e-4 * c.opts.tol_scale * es;
    worst = std::min({worst, (bound_t + slack - vt) / es, (bound_n + slack - std::abs(vn)) / es});
    ++used;
  }
  if (used == 0) return {0.0, true, false, "no admissible samples"};
  return {worst, worst >= 0.0, true, "samples=" + std::to_string(used)};
}

Outcome check_partial_m(Context& c) { return partial_m(c, false); }
Outcome check_partial_m_eta(Context& c) { return partial_m(c, true); }

Outcome check_bundle_disjointness(Context& c) {
  const int n = 256;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < c.opts.samples; ++k) {
    Complex z1 = sample_disk(c.rng, 0.9), z2 = sample_disk(c.rng, 0.9);
    while (std::abs(z1 - z2) < 1e-3) z2 = sample_disk(c.rng, 0.9);
    const auto a = image_fiber_samples(c.spec, z1, n), b = image_fiber_samples(c.spec, z2, n);
    for (const auto& p : a) {
      if (p.is_infinite()) continue;
      for (const auto& q : b)
        if (q.is_finite()) worst = std::min(worst, distance(*p, *q));
    }
  }
  return {worst - 1e-8, worst > 1e-8, true, fmt("min_sample_distance", worst)};
}

Outcome check_reflection_agreement(Context& c) {
  double worst = 0.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.95);
    const auto a = reflect(c.spec, z), b = reflect_intrinsic(c.spec, z);
    if (a.is_infinite() != b.is_infinite()) {
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    if (a.is_infinite()) continue;
    worst = std::max(worst, distance(*a, *b) / std::max(1.0, norm(*a)));
  }
  const double tol = 1e-8 * c.opts.tol_scale;
  return {tol - worst, worst <= tol, true, fmt("max_relative_difference", worst)};
}

Outcome check_reflection_diameter(Context& c) {
  double worst = 0.0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.95);
    const auto r = reflect(c.spec, z);
    const double g = u_gradient_norm(c.spec, z);
    if (r.is_infinite() || g == 0.0) continue;
    const double diam = distance(*r, lift_point(c.spec, z));
    const double expected = sigma_jet(c.spec, z).e_sigma / g;
    worst = std::max(worst, std::abs(diam - expected) / expected);
  }
  const double tol = 1e-9 * c.opts.tol_scale;
  return {tol - worst, worst <= tol, true, fmt("max_relative_difference", worst)};
}

Outcome check_reflection_continuity(Context& c) {
  if (!critical_point_find(UField{c.spec, {}}).has_value())
    return {0.0, true, false, "image unbounded, boundary shrinking not asserted"};
  const int angles = 256;
  std::vector<double> diam;
  for (int k = 2; k <= 10; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    double m = 0.0;
    for (int j = 0; j < angles; ++j) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / angles);
      const auto q = reflect(c.spec, z);
      m = std::max(m, q.is_infinite() ? std::numeric_limits<double>::infinity() : distance(*q, lift_point(c.spec, z)));
    }
    diam.push_back(m);
  }
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < diam.size(); ++i) worst = std::min(worst, (diam[i] - diam[i + 1]) / diam[i]);
  return {worst, worst >= -1e-9, true, fmt("outer_max_diameter", diam.back())};
}

Outcome check_duality(Context& c) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double on_err = 0.0, off_err = 0.0;
  int missing = 0;
  for (int k = 0; k < c.opts.duality; ++k) {
    const Complex zeta = sample_disk(c.rng, 0.7);
    Point3 p = fiber_point(zeta, -2.0 + 4.0 * u(c.rng));
    if (u(c.rng) < 0.5) p.x3 = -p.x3;
    const auto q = extend(c.spec, p);
    if (q.is_infinite()) continue;
    const auto crit = critical_point_find(UField{c.spec, Inversion{*q}});
    if (!crit) {
      ++missing;
      continue;
    }
    on_err = std::max(on_err, std::abs(*crit - zeta));
  }
  for (int k = 0; k < c.opts.duality; ++k) {
    const Complex z0 = sample_disk(c.rng, 0.7);
    const Point3 q = lift_point(c.spec, z0) + (0.1 + 0.9 * u(c.rng)) * random_unit(c.rng);
    const auto crit = critical_point_find(UField{c.spec, Inversion{q}});
    if (!crit) {
      ++missing;
      continue;
    }
    off_err = std::max(off_err, image_fiber_distance(c.spec, *crit, q) / std::max(1.0, norm(q)));
  }
  const double tol = 1e-6 * c.opts.tol_scale;
  const double worst = std::max(on_err, off_err);
  Outcome o{tol - worst, worst <= tol && missing == 0, true, fmt("on_fiber_error", on_err) + " " + fmt("off_fiber_error", off_err)};
  if (missing) {
    o.margin = -std::numeric_limits<double>::infinity();
    o.detail += " missing_critical_points=" + std::to_string(missing);
  }
  return o;
}

Outcome check_dilatation(Context& c) {
  if (!within_hypothesis(c.rho)) return {0.0, true, false, "rho out of range, no bound"};
  const auto pts = sample_space_points(c.rng, c.opts.dilatation_samples);
  const DilatationSweep sw = dilatation_sweep(c.spec, pts);
  const double bound = dilatation_bound(c.spec, c.rho) + 0.05;
  return {bound - sw.max, sw.max <= bound, true,
          fmt("max", sw.max) + " " + fmt("bound", bound) + " flagged=" + std::to_string(sw.flagged)};
}

Outcome check_reflection_dilatation(Context& c) {
  if (!within_hypothesis(c.rho)) return {0.0, true, false, "rho out of range, no bound"};
  double worst = 1.0;
  std::size_t flagged = 0;
  for (int k = 0; k < c.opts.samples; ++k) {
    const Complex z = sample_disk(c.rng, 0.95);
    const double step = 1e-4 * (1.0 - std::abs(z));
    const DilatationSample s =
        measured_surface_dilatation([&](Complex w) { return reflect(c.spec, w); }, z, step);
    if (s.flagged) {
      ++flagged;
      continue;
    }
    worst = std::max(worst, s.ratio);
  }
  const double bound = reflection_constant(c.rho) + 0.05;
  return {bound - worst, worst <= bound, true,
          fmt("max", worst) + " " + fmt("bound", bound) + " flagged=" + std::to_string(flagged)};
}

Outcome check_omega_bound(Context& c) {
  if (!within_hypothesis(c.rho)) return {0.0, false, true, "rho out of range"};
  const MarginReport rep = omega_bound_check(c.spec, c.rho, c.opts.grid);
  return {rep.min_margin, rep.passed, true, fmt("worst_radius", rep.worst_at)};
}

Outcome check_planar_extension(Context& c) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double aw_err = 0.0;
  if (c.spec.is_analytic()) {
    for (int k = 0; k < c.opts.samples; ++k) {
      const Complex z = std::polar(1.01 + 4.0 * u(c.rng), 2.0 * std::numbers::pi * u(c.rng));
      const auto a = planar_extend(c.spec, z), b = classical_aw(c.spec, z);
      if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() != b.is_infinite()) aw_err = std::numeric_limits<double>::infinity();
        continue;
      }
      aw_err = std::max(aw_err, std::abs(*a - *b) / std::max(1.0, std::abs(*a)));
    }
  }
  const double jump = planar_boundary_jump(c.spec, 256);
  const double m = std::min(1.0 - aw_err / (1e-12 * c.opts.tol_scale), 1.0 - jump / 0.01);
  return {m, m >= 0.0, true, fmt("aw_difference", aw_err) + " " + fmt("boundary_jump", jump)};
}

Outcome check_qc_constants(Context& c) {
  std::vector<double> rhos{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  if (within_hypothesis(c.rho)) rhos.push_back(c.rho);
  double residual = 0.0, identity = 0.0;
  for (const double r : rhos) {
    const QcConstants q = qc_constants(r);
    const double e = q.epsilon;
    residual = std::max(residual, std::abs(qc_h(e) - r));
    if (r > 0.0) identity = std::max(identity, std::abs(q.kappa1 - r * (1.0 + 2.0 * e * e) / (r + 2.0 * e * e)));
  }
  const double m = std::min(1e-12 - residual, 1e-10 - identity);
  return {m, m >= 0.0, true, fmt("h_residual", residual) + " " + fmt("kappa_identity", identity)};
}

struct Entry {
  CheckInfo info;
  Body body;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {{"condition", "Ahlfors-Weill type condition on Schwarzian and curvature", CheckKind::diagnostic}, check_condition},
      {{"conformality", "conformality and minimality of the Weierstrass-Enneper lift", CheckKind::unconditional},
       check_conformality},
      {{"curvature_identity", "second fundamental form and Gaussian curvature on minimal surfaces",
        CheckKind::unconditional},
       check_curvature_identity},
      {{"second_partials", "decomposition of second partials of the lift", CheckKind::unconditional},
       check_second_partials},
      {{"convexity", "hyperbolic convexity of U", CheckKind::hypothesis}, check_convexity},
      {{"gradient_bound", "upper bound on the gradient of log U", CheckKind::hypothesis}, check_gradient_bound},
      {{"s1_bound", "Ahlfors S1 bound along the diameter", CheckKind::hypothesis}, check_s1_bound},
      {{"contact_order", "second-order contact of the best Moebius approximation", CheckKind::unconditional},
       check_contact_order},
      {{"frozen_basepoint", "stationary base point of the Moebius approximations", CheckKind::unconditional},
       check_frozen_basepoint},
      {{"frozen_conformal_factor", "stationary conformal factor of the Moebius approximations",
        CheckKind::unconditional},
       check_frozen_conformal_factor},
      {{"partial_m_components", "tangential and normal components of the xi derivative of M",
        CheckKind::unconditional},
       check_partial_m},
      {{"partial_m_components_eta", "eta derivative of M with the C-prime coefficient", CheckKind::diagnostic},
       check_partial_m_eta},
      {{"bundle_disjointness", "disjointness of the image circle bundle", CheckKind::hypothesis},
       check_bundle_disjointness},
      {{"reflection_agreement", "intrinsic form of the reflection", CheckKind::unconditional},
       check_reflection_agreement},
      {{"reflection_diameter", "diameter of the image circles", CheckKind::unconditional}, check_reflection_diameter},
      {{"reflection_continuity", "boundary continuity of the reflection", CheckKind::hypothesis},
       check_reflection_continuity},
      {{"critical_point_duality", "inversion and critical point correspondence", CheckKind::hypothesis},
       check_duality},
      {{"dilatation_bound", "quasiconformality of the spatial extension", CheckKind::hypothesis}, check_dilatation},
      {{"reflection_dilatation", "quasiconformality of the reflection", CheckKind::hypothesis},
       check_reflection_dilatation},
      {{"omega_bound", "dilatation bound for the reflected surface as a graph", CheckKind::diagnostic},
       check_omega_bound},
      {{"planar_extension", "planar quasiconformal extension of the harmonic map", CheckKind::hypothesis},
       check_planar_extension},
      {{"qc_constants", "choice of epsilon and the constant k(rho)", CheckKind::unconditional}, check_qc_constants},
  };
  return list;
}

CheckStatus status_of(CheckKind kind, const Outcome& o, bool in_hypothesis) {
  if (!o.applicable) return CheckStatus::not_guaranteed;
  switch (kind) {
    case CheckKind::unconditional: return o.passed ? CheckStatus::pass : CheckStatus::fail;
    case CheckKind::hypothesis:
      if (!in_hypothesis) return CheckStatus::not_guaranteed;
      return o.passed ? CheckStatus::pass : CheckStatus::fail;
    case CheckKind::diagnostic: return o.passed ? CheckStatus::pass : CheckStatus::not_guaranteed;
  }
  return CheckStatus::fail;
}

CheckRecord run_entry(std::size_t index, const MapSpec& spec, double rho, const VerifyOptions& opts) {
  const Entry& e = entries()[index];
  Context ctx{spec, rho, opts, std::mt19937_64(opts.seed + 0x9E3779B97F4A7C15ull * (index + 1))};
  CheckRecord rec{e.info.name, e.info.anchor};
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = e.body(ctx);
  } catch (const std::exception& ex) {
    o = {-std::numeric_limits<double>::infinity(), false, true, std::string("error: ") + ex.what()};
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.margin = o.margin;
  rec.detail = o.detail;
  rec.status = status_of(e.info.kind, o, within_hypothesis(rho));
  return rec;
}

}  // namespace

const std::vector<CheckInfo>& registered_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

CheckRecord run_check(const std::string& name, const MapSpec& spec, double rho, const VerifyOptions& opts) {
  const auto& list = entries();
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].info.name == name) return run_entry(i, spec, rho, opts);
  throw std::invalid_argument("unknown check: " + name);
}

VerificationReport run_verification(const MapSpec& spec, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.label = spec.label();
  rep.grid = opts.grid;
  rep.seed = opts.seed;
  rep.rho_estimate = estimate_rho(spec, opts.grid);
  rep.in_hypothesis = within_hypothesis(rep.rho_estimate);
  for (std::size_t i = 0; i < entries().size(); ++i) rep.checks.push_back(run_entry(i, spec, rep.rho_estimate, opts));
  return rep;
}

}  // namespace harmext
