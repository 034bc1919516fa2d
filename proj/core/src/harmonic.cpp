#include "harmext/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmext/parallel.hpp"

namespace harmext {

double grid_radius(const GridSpec& grid, int i) {
  return 1.0 - std::pow(1.0 - grid.r_max, static_cast<double>(i) / grid.radii);
}

std::vector<Complex> polar_grid(const GridSpec& grid) {
  std::vector<Complex> pts;
  pts.reserve(1 + static_cast<std::size_t>(grid.radii) * grid.angles);
  pts.emplace_back(0.0, 0.0);
  for (int i = 1; i <= grid.radii; ++i) {
    const double r = grid_radius(grid, i);
    for (int j = 0; j < grid.angles; ++j) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / grid.angles));
  }
  return pts;
}

SigmaJet sigma_from_jets(const Jet& hp, const Jet& q) {
  if (std::abs(hp.f) < 1e-14) throw DegenerateError("h' vanishes: degenerate metric");
  const double nq = 1.0 + std::norm(q.f);
  const Complex qbar = std::conj(q.f);
  SigmaJet s;
  s.e_sigma = std::abs(hp.f) * nq;
  const Complex r1 = hp.d1 / hp.f;
  s.sigma_z = 0.5 * r1 + qbar * q.d1 / nq;
  s.sigma_zbar = std::conj(s.sigma_z);
  s.sigma_zz = 0.5 * hp.d2 / hp.f - 0.5 * r1 * r1 + qbar * q.d2 / nq - qbar * qbar * q.d1 * q.d1 / (nq * nq);
  s.sigma_zzbar = std::norm(q.d1) / (nq * nq);
  return s;
}

SigmaJet sigma_jet(const MapSpec& spec, Complex z) {
  return sigma_from_jets(spec.h_prime().jet(z), spec.q().jet(z));
}

Complex schwarzian(const SigmaJet& s) { return 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z); }
Complex schwarzian(const MapSpec& spec, Complex z) { return schwarzian(sigma_jet(spec, z)); }

double curvature(const SigmaJet& s) { return -4.0 * s.sigma_zzbar / (s.e_sigma * s.e_sigma); }
double curvature(const MapSpec& spec, Complex z) { return curvature(sigma_jet(spec, z)); }

ConditionSample condition_value(const MapSpec& spec, Complex z) {
  const SigmaJet s = sigma_jet(spec, z);
  ConditionSample c;
  c.z = z;
  c.schwarzian = schwarzian(s);
  c.curvature_term = 4.0 * s.sigma_zzbar;
  const double w = 1.0 - std::norm(z);
  c.n_value = w * w * (std::abs(c.schwarzian) + c.curvature_term) / 2.0;
  return c;
}

std::vector<ConditionSample> condition_sweep(const MapSpec& spec, const GridSpec& grid) {
  const auto pts = polar_grid(grid);
  std::vector<ConditionSample> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = condition_value(spec, pts[i]); });
  return out;
}

double estimate_rho(const MapSpec& spec, const GridSpec& grid) {
  double rho = 0.0;
  for (const auto& c : condition_sweep(spec, grid)) rho = std::max(rho, c.n_value);
  return rho;
}

Complex dilatation_omega(const MapSpec& spec, Complex z) {
  const Complex q = spec.q().value(z);
  return q * q;
}

}  // namespace harmext
