#pragma once

#include <vector>

#include "harmext/complex.hpp"
#include "harmext/jet.hpp"
#include "harmext/map_spec.hpp"

namespace harmext {

// e^σ = |h′|(1+|q|²) and derivatives of σ.
struct SigmaJet {
  double e_sigma = 1.0;
  Complex sigma_z{};
  Complex sigma_zbar{};
  Complex sigma_zz{};
  double sigma_zzbar = 0.0;
};

struct ConditionSample {
  Complex z{};
  Complex schwarzian{};
  double curvature_term = 0.0;  // e^{2σ}|K|
  double n_value = 0.0;         // (1−|z|²)²(|S| + e^{2σ}|K|)/2
};

// Polar grid with radii 1 − (1−r_max)^{i/n}, i = 1..n, plus the origin.
struct GridSpec {
  int radii = 64;
  int angles = 256;
  double r_max = 0.999;
};

double grid_radius(const GridSpec& grid, int i);
// Origin first, then ring i = 1..radii in angle order.
std::vector<Complex> polar_grid(const GridSpec& grid);

// Throws DegenerateError when |h′(z)| < 1e-14.
SigmaJet sigma_from_jets(const Jet& h_prime, const Jet& q);
SigmaJet sigma_jet(const MapSpec& spec, Complex z);
Complex schwarzian(const MapSpec& spec, Complex z);
Complex schwarzian(const SigmaJet& s);
double curvature(const MapSpec& spec, Complex z);
double curvature(const SigmaJet& s);
ConditionSample condition_value(const MapSpec& spec, Complex z);
std::vector<ConditionSample> condition_sweep(const MapSpec& spec, const GridSpec& grid);
double estimate_rho(const MapSpec& spec, const GridSpec& grid = {});
Complex dilatation_omega(const MapSpec& spec, Complex z);

}  // namespace harmext
