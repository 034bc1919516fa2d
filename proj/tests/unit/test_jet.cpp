#include <gtest/gtest.h>

#include "harmext/jet.hpp"
#include "oracles.hpp"

using namespace harmext;
using harmext::testing::Gen;

namespace {

void expect_near(Complex a, Complex b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Jet, ExpHasEqualDerivatives) {
  const Complex z{0.3, -0.7};
  const Jet j = exp(Jet::variable(z));
  for (const Complex d : {j.f, j.d1, j.d2, j.d3}) expect_near(d, std::exp(z), 1e-15);
}

TEST(Jet, LogDerivativesClosedForm) {
  const Complex z{1.2, 0.4};
  const Jet j = log(Jet::variable(z));
  expect_near(j.f, std::log(z), 1e-15);
  expect_near(j.d1, 1.0 / z, 1e-15);
  expect_near(j.d2, -1.0 / (z * z), 1e-15);
  expect_near(j.d3, 2.0 / (z * z * z), 1e-15);
}

TEST(Jet, PowerOfShiftedVariable) {
  const double a = 0.7;
  const Complex z{0.2, 0.1};
  const Jet j = pow(1.0 + Jet::variable(z), a);
  const Complex w = 1.0 + z;
  expect_near(j.f, std::pow(w, a), 1e-15);
  expect_near(j.d1, a * std::pow(w, a - 1), 1e-14);
  expect_near(j.d2, a * (a - 1) * std::pow(w, a - 2), 1e-14);
  expect_near(j.d3, a * (a - 1) * (a - 2) * std::pow(w, a - 3), 1e-14);
}

TEST(Jet, QuotientMatchesClosedForm) {
  // (1+z)/(1−z): derivatives 2/(1−z)², 4/(1−z)³, 12/(1−z)⁴.
  const Complex z{-0.3, 0.5};
  const Jet x = Jet::variable(z);
  const Jet j = (1.0 + x) / (1.0 - x);
  const Complex u = 1.0 - z;
  expect_near(j.d1, 2.0 / (u * u), 1e-14);
  expect_near(j.d2, 4.0 / (u * u * u), 1e-14);
  expect_near(j.d3, 12.0 / (u * u * u * u), 1e-13);
}

TEST(Jet, SeriesEvaluationMatchesDirectSums) {
  const std::vector<Complex> c{{1, 0}, {0, 2}, {-3, 1}, {0.5, 0}, {0, -0.25}};
  const Complex z{0.4, -0.2};
  const Jet j = jet_eval_series(c, z);
  Complex f = 0, d1 = 0, d2 = 0, d3 = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    f += c[k] * std::pow(z, kk);
    if (k >= 1) d1 += kk * c[k] * std::pow(z, kk - 1);
    if (k >= 2) d2 += kk * (kk - 1) * c[k] * std::pow(z, kk - 2);
    if (k >= 3) d3 += kk * (kk - 1) * (kk - 2) * c[k] * std::pow(z, kk - 3);
  }
  expect_near(j.f, f, 1e-14);
  expect_near(j.d1, d1, 1e-14);
  expect_near(j.d2, d2, 1e-13);
  expect_near(j.d3, d3, 1e-13);
}

TEST(JetProperty, ProductRuleAgreesWithSeriesProduct) {
  Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> a(4), b(4), ab(7, 0.0);
    for (auto& c : a) c = g.complex(1.0);
    for (auto& c : b) c = g.complex(1.0);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) ab[i + k] += a[i] * b[k];
    const Complex z = g.disk(0.9);
    const Jet lhs = jet_eval_series(a, z) * jet_eval_series(b, z);
    const Jet rhs = jet_eval_series(ab, z);
    expect_near(lhs.f, rhs.f, 1e-12);
    expect_near(lhs.d1, rhs.d1, 1e-12);
    expect_near(lhs.d2, rhs.d2, 1e-11);
    expect_near(lhs.d3, rhs.d3, 1e-11);
  }
}

TEST(JetProperty, CompositionMatchesFiniteDifferences) {
  Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex z = g.disk(0.5);
    const Jet x = Jet::variable(z);
    const Jet inner = x * x * 0.5 + x;
    const Jet outer = exp(inner) / (2.0 + inner);
    const auto h = [&](double t) {
      const Complex w = z + t;
      return std::exp(w * w * 0.5 + w) / (2.0 + w * w * 0.5 + w);
    };
    expect_near(outer.d1, harmext::testing::fdc(h, 0.0, 1e-3), 1e-9);
  }
}

TEST(JetProperty, RealJetChainRule) {
  Gen g(13);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = g.uniform(0.2, 2.0);
    const RealJet j = sqrt(RealJet::variable(x) * RealJet::variable(x) + 1.0);
    const double s = std::sqrt(x * x + 1.0);
    EXPECT_NEAR(j.d1, x / s, 1e-14);
    EXPECT_NEAR(j.d2, 1.0 / (s * s * s), 1e-14);
    EXPECT_NEAR(j.d3, -3.0 * x / std::pow(s, 5), 1e-13);
  }
}
