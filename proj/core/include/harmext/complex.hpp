#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "harmext/errors.hpp"

namespace harmext {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A value of T or the point at infinity of its one-point compactification.
template <class T>
class Extended {
 public:
  Extended(const T& v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static Extended infinity() { return Extended(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const T& value() const {
    if (!value_) throw InfinitePointError("point at infinity has no finite value");
    return *value_;
  }

  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }

 private:
  Extended() = default;
  std::optional<T> value_;
};

}  // namespace harmext
