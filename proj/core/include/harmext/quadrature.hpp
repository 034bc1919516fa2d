#pragma once

#include <array>
#include <functional>

#include "harmext/complex.hpp"

namespace harmext {

using Integrand3 = std::function<std::array<Complex, 3>(Complex)>;

struct QuadratureOptions {
  double rel_tol = 1e-13;
  int max_depth = 40;
};

// ∫₀^z F(w) dw along the segment [0, z] by adaptive composite 16-point
// Gauss–Legendre: a panel is halved until it agrees with its two halves.
// Throws ConvergenceError when max_depth is reached.
std::array<Complex, 3> integrate_segment(const Integrand3& f, Complex z, const QuadratureOptions& opts = {});

// Nodes and weights on [-1, 1].
const std::array<double, 16>& gauss_legendre_nodes();
const std::array<double, 16>& gauss_legendre_weights();

}  // namespace harmext
