#include "harmext/point3.hpp"

#include <ostream>

#include "harmext/errors.hpp"

namespace harmext {

std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << p.x1 << ", " << p.x2 << ", " << p.x3 << ')';
}

Frame::Frame(const Point3& origin, const Point3& e1, const Point3& e2, const Point3& e3, double scale)
    : origin_(origin), e1_(e1), e2_(e2), e3_(e3), scale_(scale) {
  constexpr double tol = 1e-10;
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DegenerateError("frame scale must be positive");
  if (!origin.finite()) throw DegenerateError("frame origin must be finite");
  const bool unit = std::abs(norm2(e1) - 1) < tol && std::abs(norm2(e2) - 1) < tol && std::abs(norm2(e3) - 1) < tol;
  const bool orth = std::abs(dot(e1, e2)) < tol && std::abs(dot(e1, e3)) < tol && std::abs(dot(e2, e3)) < tol;
  if (!unit || !orth) throw DegenerateError("frame axes are not orthonormal");
  if (norm(cross(e1, e2) - e3) > tol) throw DegenerateError("frame is not right-handed");
}

}  // namespace harmext
