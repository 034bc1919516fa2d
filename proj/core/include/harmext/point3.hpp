#pragma once

#include <cmath>
#include <iosfwd>

#include "harmext/complex.hpp"

namespace harmext {

struct Point3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  static Point3 from_plane(Complex z) { return {z.real(), z.imag(), 0.0}; }
  Complex planar() const { return {x1, x2}; }
  bool finite() const { return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3); }

  Point3& operator+=(const Point3& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  Point3& operator-=(const Point3& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  Point3& operator*=(double s) {
    x1 *= s; x2 *= s; x3 *= s;
    return *this;
  }
};

inline Point3 operator+(Point3 a, const Point3& b) { return a += b; }
inline Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
inline Point3 operator-(const Point3& a) { return {-a.x1, -a.x2, -a.x3}; }
inline Point3 operator*(Point3 a, double s) { return a *= s; }
inline Point3 operator*(double s, Point3 a) { return a *= s; }
inline Point3 operator/(Point3 a, double s) { return a *= 1.0 / s; }

inline double dot(const Point3& a, const Point3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}
inline double norm2(const Point3& a) { return dot(a, a); }
inline double norm(const Point3& a) { return std::sqrt(norm2(a)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

std::ostream& operator<<(std::ostream& os, const Point3& p);

// Euclidean similarity x ↦ origin + scale·(x1 e1 + x2 e2 + x3 e3).
class Frame {
 public:
  Frame() = default;
  // Throws DegenerateError unless (e1, e2, e3) is a right-handed orthonormal triple.
  Frame(const Point3& origin, const Point3& e1, const Point3& e2, const Point3& e3, double scale);

  static Frame standard() { return {}; }

  const Point3& origin() const { return origin_; }
  const Point3& e1() const { return e1_; }
  const Point3& e2() const { return e2_; }
  const Point3& e3() const { return e3_; }
  double scale() const { return scale_; }

  Point3 to_world(const Point3& x) const {
    return origin_ + scale_ * (x.x1 * e1_ + x.x2 * e2_ + x.x3 * e3_);
  }
  Point3 to_local(const Point3& p) const {
    const Point3 d = (p - origin_) / scale_;
    return {dot(d, e1_), dot(d, e2_), dot(d, e3_)};
  }
  // Rotation part only, applied to a vector.
  Point3 rotate(const Point3& v) const { return v.x1 * e1_ + v.x2 * e2_ + v.x3 * e3_; }

 private:
  Point3 origin_{};
  Point3 e1_{1, 0, 0};
  Point3 e2_{0, 1, 0};
  Point3 e3_{0, 0, 1};
  double scale_ = 1.0;
};

}  // namespace harmext
