#pragma once

#include <array>
#include <memory>

#include "harmext/complex.hpp"
#include "harmext/harmonic.hpp"
#include "harmext/map_spec.hpp"
#include "harmext/point3.hpp"

namespace harmext {

struct SurfaceJet {
  Complex z{};
  Point3 position{};
  Point3 du{};      // ∂ξ f̃
  Point3 dv{};      // ∂η f̃
  Point3 normal{};  // du × dv / e^{2σ}
  SigmaJet sigma{};
  double alpha11 = 0.0;
  double alpha12 = 0.0;
  double alpha22 = 0.0;
  Point3 d_xixi{};   // ∂ξξ f̃
  Point3 d_xieta{};  // ∂ξη f̃
  Complex h_prime{};
  Complex g_prime{};
};

// h(z), g(z) and ∫₀^z h′q.
struct WeierstrassPrimitives {
  Complex h{};
  Complex g{};
  Complex p{};
};

WeierstrassPrimitives weierstrass_primitives(const MapSpec& spec, Complex z);
// f(z) = h(z) + conj(g(z)).
Complex harmonic_value(const MapSpec& spec, Complex z);
Point3 lift_point(const MapSpec& spec, Complex z);
// Memoized on the MapSpec cache.
SurfaceJet surface_jet(const MapSpec& spec, Complex z);
SurfaceJet surface_jet_uncached(const MapSpec& spec, Complex z);
Point3 tangential_project(const SurfaceJet& sj, const Point3& v);
// ∂ξ f̃, ∂ξξ f̃, ∂ξξξ f̃.
std::array<Point3, 3> xi_derivatives(const MapSpec& spec, Complex z);

// Thread-safe memo of surface jets keyed by z quantized to 1e-15.
class SurfaceJetCache {
 public:
  explicit SurfaceJetCache(std::size_t capacity = 1u << 16);
  ~SurfaceJetCache();
  bool lookup(Complex z, SurfaceJet& out) const;
  void store(Complex z, const SurfaceJet& sj);
  std::size_t size() const;
  void clear();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::shared_ptr<SurfaceJetCache> make_surface_jet_cache();

}  // namespace harmext
