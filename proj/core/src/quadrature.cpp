#include "harmext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

struct Rule {
  std::array<double, 16> x{};
  std::array<double, 16> w{};
};

Rule make_rule() {
  constexpr int n = 16;
  Rule r;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

using Vec = std::array<Complex, 3>;

double vec_norm(const Vec& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

Vec panel(const Integrand3& f, Complex z, double a, double b, double* mass = nullptr) {
  const Rule& r = rule();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Vec acc{};
  double m = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Vec v = f(z * (mid + half * r.x[i]));
    for (int k = 0; k < 3; ++k) acc[k] += r.w[i] * v[k];
    m += r.w[i] * vec_norm(v);
  }
  for (auto& c : acc) c *= half * z;
  if (mass) *mass = m * half * std::abs(z);
  return acc;
}

Vec refine(const Integrand3& f, Complex z, double a, double b, const Vec& coarse, double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const Vec left = panel(f, z, a, m);
  const Vec right = panel(f, z, m, b);
  Vec fine{left[0] + right[0], left[1] + right[1], left[2] + right[2]};
  Vec diff{fine[0] - coarse[0], fine[1] - coarse[1], fine[2] - coarse[2]};
  if (vec_norm(diff) <= tol) return fine;
  if (depth >= max_depth) throw ConvergenceError("quadrature did not converge along the radial segment");
  const Vec l = refine(f, z, a, m, left, tol, depth + 1, max_depth);
  const Vec r = refine(f, z, m, b, right, tol, depth + 1, max_depth);
  return {l[0] + r[0], l[1] + r[1], l[2] + r[2]};
}

}  // namespace

const std::array<double, 16>& gauss_legendre_nodes() { return rule().x; }
const std::array<double, 16>& gauss_legendre_weights() { return rule().w; }

std::array<Complex, 3> integrate_segment(const Integrand3& f, Complex z, const QuadratureOptions& opts) {
  if (z == Complex{}) return {};
  double mass = 0.0;
  const Vec whole = panel(f, z, 0.0, 1.0, &mass);
  const double scale = std::max(mass, 1e-300);
  return refine(f, z, 0.0, 1.0, whole, opts.rel_tol * scale, 0, opts.max_depth);
}

}  // namespace harmext
