#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "harmext/analysis.hpp"
#include "harmext/harmonic.hpp"
#include "harmext/map_spec.hpp"
#include "harmext/point3.hpp"

namespace harmext {

enum class CheckStatus { pass, fail, not_guaranteed };

const char* to_string(CheckStatus s);

// unconditional checks are asserted for every spec, hypothesis checks only
// when the estimated ρ is below 1, diagnostic checks never fail the suite.
enum class CheckKind { unconditional, hypothesis, diagnostic };

struct CheckInfo {
  std::string name;
  std::string anchor;
  CheckKind kind;
};

struct CheckRecord {
  std::string name;
  std::string anchor;
  double margin = 0.0;  // ≥ 0 means the assertion held
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  GridSpec grid{};
  int samples = 200;
  int geodesics = 50;
  int geodesic_samples = 200;
  int post_transforms = 10;
  int duality = 20;
  int dilatation_samples = 1000;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
};

struct VerificationReport {
  std::string label;
  double rho_estimate = 0.0;
  bool in_hypothesis = true;
  GridSpec grid{};
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool any_guaranteed_failure() const;
  bool any_warning() const;
};

// Hypothesis holds when ρ̂ < 1 − 1e-9.
bool within_hypothesis(double rho);

const std::vector<CheckInfo>& registered_checks();
VerificationReport run_verification(const MapSpec& spec, const VerifyOptions& opts = {});
// Runs one registered check; throws std::invalid_argument for unknown names.
CheckRecord run_check(const std::string& name, const MapSpec& spec, double rho, const VerifyOptions& opts);

// Horizontal position uniform in the disk of radius 3, height log-uniform in
// [1e-3, 1e3], random sign.
std::vector<Point3> sample_space_points(std::mt19937_64& rng, std::size_t n);
Complex sample_disk(std::mt19937_64& rng, double radius);

struct DilatationSweep {
  std::vector<DilatationSample> samples;
  double max = 1.0;
  double mean = 1.0;
  std::size_t flagged = 0;
};

DilatationSweep dilatation_sweep(const MapSpec& spec, const std::vector<Point3>& points);
// k of the analytic variant for analytic specs, of the harmonic one otherwise.
double dilatation_bound(const MapSpec& spec, double rho);

// Two-scale residual ratio of the best Möbius approximation at ζ along dir;
// returns 3 when both residuals vanish to rounding.
double contact_log_ratio(const MapSpec& spec, Complex zeta, Complex dir, double t = 1e-2);

// Distance from p to the image fiber through f̃(ζ) and ℛ(ζ).
double image_fiber_distance(const MapSpec& spec, Complex zeta, const Point3& p);

double chordal_distance(Complex a, Complex b);

// Largest chordal jump |F(1.001e^{iθ}) − f(0.999e^{iθ})| over `angles` directions, each divided
// by max(1, chordal rate of f per unit radius just inside the circle).
double planar_boundary_jump(const MapSpec& spec, int angles);

}  // namespace harmext
