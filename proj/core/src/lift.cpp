#include "harmext/lift.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "harmext/quadrature.hpp"

namespace harmext {

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Point3 xi_vector(Complex hp, Complex gp, Complex hq) {
  return {(hp + gp).real(), (hp - gp).imag(), 2.0 * hq.imag()};
}

Point3 eta_vector(Complex hp, Complex gp, Complex hq) {
  return {-(hp + gp).imag(), (hp - gp).real(), 2.0 * hq.real()};
}

}  // namespace

WeierstrassPrimitives weierstrass_primitives(const MapSpec& spec, Complex z) {
  if (const auto* prim = spec.primitives()) return {horner(prim->h, z), horner(prim->g, z), horner(prim->p, z)};
  const AnalyticFunction& hp = spec.h_prime();
  const AnalyticFunction& q = spec.q();
  const bool flat = spec.is_analytic();
  const auto r = integrate_segment(
      [&](Complex w) -> std::array<Complex, 3> {
        const Complex h = hp.value(w);
        if (flat) return {h, 0.0, 0.0};
        const Complex qv = q.value(w);
        const Complex hq = h * qv;
        return {h, hq * qv, hq};
      },
      z);
  return {r[0], r[1], r[2]};
}

Complex harmonic_value(const MapSpec& spec, Complex z) {
  const auto w = weierstrass_primitives(spec, z);
  return w.h + std::conj(w.g);
}

Point3 lift_point(const MapSpec& spec, Complex z) {
  const auto w = weierstrass_primitives(spec, z);
  return {(w.h + w.g).real(), (w.h - w.g).imag(), 2.0 * w.p.imag()};
}

SurfaceJet surface_jet_uncached(const MapSpec& spec, Complex z) {
  const Jet hp = spec.h_prime().jet(z);
  const Jet q = spec.q().jet(z);
  const Jet hq = hp * q;
  const Jet gp = hq * q;
  SurfaceJet sj;
  sj.z = z;
  sj.sigma = sigma_from_jets(hp, q);
  sj.position = lift_point(spec, z);
  sj.h_prime = hp.f;
  sj.g_prime = gp.f;
  sj.du = xi_vector(hp.f, gp.f, hq.f);
  sj.dv = eta_vector(hp.f, gp.f, hq.f);
  const double e2 = sj.sigma.e_sigma * sj.sigma.e_sigma;
  sj.normal = cross(sj.du, sj.dv) / e2;
  sj.d_xixi = xi_vector(hp.d1, gp.d1, hq.d1);
  sj.d_xieta = eta_vector(hp.d1, gp.d1, hq.d1);
  sj.alpha11 = dot(sj.d_xixi, sj.normal);
  sj.alpha12 = dot(sj.d_xieta, sj.normal);
  sj.alpha22 = -sj.alpha11;
  return sj;
}

SurfaceJet surface_jet(const MapSpec& spec, Complex z) {
  SurfaceJet sj;
  if (spec.cache().lookup(z, sj)) return sj;
  sj = surface_jet_uncached(spec, z);
  spec.cache().store(z, sj);
  return sj;
}

Point3 tangential_project(const SurfaceJet& sj, const Point3& v) { return v - dot(v, sj.normal) * sj.normal; }

std::array<Point3, 3> xi_derivatives(const MapSpec& spec, Complex z) {
  const Jet hp = spec.h_prime().jet(z);
  const Jet q = spec.q().jet(z);
  const Jet hq = hp * q;
  const Jet gp = hq * q;
  return {xi_vector(hp.f, gp.f, hq.f), xi_vector(hp.d1, gp.d1, hq.d1), xi_vector(hp.d2, gp.d2, hq.d2)};
}

struct SurfaceJetCache::Impl {
  struct Key {
    long long re, im;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const {
      return std::hash<long long>()(k.re) ^ (std::hash<long long>()(k.im) * 0x9e3779b97f4a7c15ULL);
    }
  };
  static bool key_of(Complex z, Key& k) {
    if (!(std::abs(z.real()) < 1.0 && std::abs(z.imag()) < 1.0)) return false;
    k = {std::llround(z.real() * 1e15), std::llround(z.imag() * 1e15)};
    return true;
  }
  std::size_t capacity;
  mutable std::mutex mutex;
  std::unordered_map<Key, SurfaceJet, Hash> map;
};

SurfaceJetCache::SurfaceJetCache(std::size_t capacity) : impl_(std::make_unique<Impl>()) {
  impl_->capacity = capacity;
}

SurfaceJetCache::~SurfaceJetCache() = default;

bool SurfaceJetCache::lookup(Complex z, SurfaceJet& out) const {
  Impl::Key k{};
  if (!Impl::key_of(z, k)) return false;
  std::lock_guard<std::mutex> lock(impl_->mutex);
  const auto it = impl_->map.find(k);
  if (it == impl_->map.end()) return false;
  out = it->second;
  return true;
}

void SurfaceJetCache::store(Complex z, const SurfaceJet& sj) {
  Impl::Key k{};
  if (!Impl::key_of(z, k)) return;
  std::lock_guard<std::mutex> lock(impl_->mutex);
  if (impl_->map.size() >= impl_->capacity) impl_->map.clear();
  impl_->map.emplace(k, sj);
}

std::size_t SurfaceJetCache::size() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->map.size();
}

void SurfaceJetCache::clear() {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->map.clear();
}

std::shared_ptr<SurfaceJetCache> make_surface_jet_cache() { return std::make_shared<SurfaceJetCache>(); }

}  // namespace harmext
