#include "harmext/jet.hpp"

#include <stdexcept>

namespace harmext {

Jet jet_eval_series(const std::vector<Complex>& coeffs, Complex z) {
  if (coeffs.empty()) throw std::invalid_argument("series needs at least one coefficient");
  Complex p0 = coeffs.back(), p1 = 0.0, p2 = 0.0, p3 = 0.0;
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
    p3 = p3 * z + p2;
    p2 = p2 * z + p1;
    p1 = p1 * z + p0;
    p0 = p0 * z + *it;
  }
  return {p0, p1, 2.0 * p2, 6.0 * p3};
}

}  // namespace harmext
