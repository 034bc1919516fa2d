#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include "harmext/complex.hpp"

namespace harmext {

// Value and first three derivatives of a function at a point.
// S is double for real curves and Complex for holomorphic functions.
template <class S>
struct BasicJet {
  S f{};
  S d1{};
  S d2{};
  S d3{};

  static BasicJet constant(S c) { return {c, S{}, S{}, S{}}; }
  static BasicJet variable(S x) { return {x, S(1), S{}, S{}}; }

  BasicJet& operator+=(const BasicJet& o) {
    f += o.f; d1 += o.d1; d2 += o.d2; d3 += o.d3;
    return *this;
  }
  BasicJet& operator-=(const BasicJet& o) {
    f -= o.f; d1 -= o.d1; d2 -= o.d2; d3 -= o.d3;
    return *this;
  }
  BasicJet& operator*=(S c) {
    f *= c; d1 *= c; d2 *= c; d3 *= c;
    return *this;
  }
};

using Jet = BasicJet<Complex>;
using RealJet = BasicJet<double>;

template <class S>
BasicJet<S> operator+(BasicJet<S> a, const BasicJet<S>& b) { return a += b; }
template <class S>
BasicJet<S> operator-(BasicJet<S> a, const BasicJet<S>& b) { return a -= b; }
template <class S>
BasicJet<S> operator-(const BasicJet<S>& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }
template <class S>
BasicJet<S> operator+(BasicJet<S> a, std::type_identity_t<S> c) { a.f += c; return a; }
template <class S>
BasicJet<S> operator+(std::type_identity_t<S> c, BasicJet<S> a) { a.f += c; return a; }
template <class S>
BasicJet<S> operator-(BasicJet<S> a, std::type_identity_t<S> c) { a.f -= c; return a; }
template <class S>
BasicJet<S> operator-(std::type_identity_t<S> c, const BasicJet<S>& a) { return (-a) + c; }
template <class S>
BasicJet<S> operator*(BasicJet<S> a, std::type_identity_t<S> c) { return a *= c; }
template <class S>
BasicJet<S> operator*(std::type_identity_t<S> c, BasicJet<S> a) { return a *= c; }

template <class S>
BasicJet<S> operator*(const BasicJet<S>& a, const BasicJet<S>& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + S(2) * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + S(3) * a.d2 * b.d1 + S(3) * a.d1 * b.d2 + a.f * b.d3};
}

// g∘x where g0..g3 are the derivatives of g at x.f.
template <class S>
BasicJet<S> chain(const BasicJet<S>& x, S g0, S g1, S g2, S g3) {
  const S x1 = x.d1;
  return {g0,
          g1 * x1,
          g2 * x1 * x1 + g1 * x.d2,
          g3 * x1 * x1 * x1 + S(3) * g2 * x1 * x.d2 + g1 * x.d3};
}

// outer is the jet of g at inner.f.
template <class S>
BasicJet<S> compose(const BasicJet<S>& outer, const BasicJet<S>& inner) {
  return chain(inner, outer.f, outer.d1, outer.d2, outer.d3);
}

template <class S>
BasicJet<S> reciprocal(const BasicJet<S>& x) {
  const S r = S(1) / x.f;
  const S r2 = r * r;
  return chain(x, r, -r2, S(2) * r2 * r, S(-6) * r2 * r2);
}

template <class S>
BasicJet<S> operator/(const BasicJet<S>& a, const BasicJet<S>& b) { return a * reciprocal(b); }
template <class S>
BasicJet<S> operator/(const BasicJet<S>& a, std::type_identity_t<S> c) { return a * (S(1) / c); }
template <class S>
BasicJet<S> operator/(std::type_identity_t<S> c, const BasicJet<S>& b) { return reciprocal(b) * c; }

template <class S>
BasicJet<S> log(const BasicJet<S>& x) {
  using std::log;
  const S r = S(1) / x.f;
  return chain(x, log(x.f), r, -r * r, S(2) * r * r * r);
}

template <class S>
BasicJet<S> exp(const BasicJet<S>& x) {
  using std::exp;
  const S e = exp(x.f);
  return chain(x, e, e, e, e);
}

// Principal branch x^alpha.
template <class S, class A>
BasicJet<S> pow(const BasicJet<S>& x, A alpha) {
  using std::pow;
  const S a(alpha);
  const S p = pow(x.f, a);
  const S r = S(1) / x.f;
  const S p1 = a * p * r;
  const S p2 = (a - S(1)) * p1 * r;
  const S p3 = (a - S(2)) * p2 * r;
  return chain(x, p, p1, p2, p3);
}

template <class S>
BasicJet<S> sqrt(const BasicJet<S>& x) {
  return pow(x, 0.5);
}

// Sum c_k z^k with derivatives, by Horner on the derived series.
Jet jet_eval_series(const std::vector<Complex>& coeffs, Complex z);

}  // namespace harmext
