#include "harmext/map_spec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "harmext/lift.hpp"

namespace harmext {

namespace {

class SeriesFunction final : public AnalyticFunction {
 public:
  explicit SeriesFunction(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
    for (const Complex& c : coeffs_) {
      if (!is_finite(c)) throw std::invalid_argument("series coefficient is not finite");
      if (c != Complex{}) zero_ = false;
    }
  }
  Jet jet(Complex z) const override { return jet_eval_series(coeffs_, z); }
  Complex value(Complex z) const override {
    Complex acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  const std::vector<Complex>* coefficients() const override { return &coeffs_; }
  bool identically_zero() const override { return zero_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "series(" << coeffs_.size() << " terms)";
    return os.str();
  }

 private:
  std::vector<Complex> coeffs_;
  bool zero_ = true;
};

class AlphaPowerDerivative final : public AnalyticFunction {
 public:
  explicit AlphaPowerDerivative(double alpha) : alpha_(alpha) {}
  Jet jet(Complex z) const override {
    const Jet w = Jet::variable(z);
    const Jet f = pow((1.0 + w) / (1.0 - w), alpha_);
    return f * Complex(2.0 * alpha_) / (1.0 - w * w);
  }
  Complex value(Complex z) const override {
    return std::pow((1.0 + z) / (1.0 - z), alpha_) * (2.0 * alpha_) / (1.0 - z * z);
  }
  std::string describe() const override { return "alpha_power'(" + std::to_string(alpha_) + ")"; }

 private:
  double alpha_;
};

class KoebeDerivative final : public AnalyticFunction {
 public:
  Jet jet(Complex z) const override {
    const Jet w = Jet::variable(z);
    const Jet one_minus = 1.0 - w;
    return (1.0 + w) / (one_minus * one_minus * one_minus);
  }
  Complex value(Complex z) const override {
    const Complex m = 1.0 - z;
    return (1.0 + z) / (m * m * m);
  }
  std::string describe() const override { return "koebe'"; }
};

class N0Derivative final : public AnalyticFunction {
 public:
  Jet jet(Complex z) const override {
    const Jet w = Jet::variable(z);
    const Jet u = pow((1.0 + w) / (1.0 - w), std::sqrt(2.0));
    const Jet up1 = u + Complex(1.0);
    return Complex(4.0) * u / ((1.0 - w * w) * up1 * up1);
  }
  Complex value(Complex z) const override {
    const Complex u = std::pow((1.0 + z) / (1.0 - z), std::sqrt(2.0));
    return 4.0 * u / ((1.0 - z * z) * (u + 1.0) * (u + 1.0));
  }
  std::string describe() const override { return "n0'"; }
};

class ComposedFunction final : public AnalyticFunction {
 public:
  ComposedFunction(Function inner, const PlanarMoebius& m, bool times_derivative)
      : inner_(std::move(inner)), m_(m), times_derivative_(times_derivative) {}
  Jet jet(Complex z) const override {
    const Jet mj = m_.jet(z);
    Jet r = compose(inner_->jet(mj.f), mj);
    if (times_derivative_) {
      const Jet w = Jet::variable(z);
      const Jet den = m_.c() * w + m_.d();
      r = r * (m_.det() / (den * den));
    }
    return r;
  }
  Complex value(Complex z) const override {
    const Complex w = *m_.apply(z);
    Complex v = inner_->value(w);
    if (times_derivative_) v *= m_.derivative(z);
    return v;
  }
  std::string describe() const override { return inner_->describe() + "∘M"; }

 private:
  Function inner_;
  PlanarMoebius m_;
  bool times_derivative_;
};

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<Complex> poly_primitive(const std::vector<Complex>& a) {
  std::vector<Complex> r(a.size() + 1);
  for (std::size_t k = 0; k < a.size(); ++k) r[k + 1] = a[k] / static_cast<double>(k + 1);
  return r;
}

double param(const builtin::Params& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void check_keys(const builtin::Params& params, std::initializer_list<const char*> allowed, const std::string& name) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw std::invalid_argument("builtin '" + name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw std::invalid_argument("parameter '" + key + "' is not finite");
  }
}

}  // namespace

Function make_series(std::vector<Complex> coeffs) { return std::make_shared<SeriesFunction>(std::move(coeffs)); }
Function make_constant(Complex c) { return make_series({c}); }
Function make_alpha_power_derivative(double alpha) { return std::make_shared<AlphaPowerDerivative>(alpha); }
Function make_koebe_derivative() { return std::make_shared<KoebeDerivative>(); }
Function make_n0_derivative() { return std::make_shared<N0Derivative>(); }

Function make_composed(Function inner, const PlanarMoebius& m, bool times_derivative) {
  if (!times_derivative && inner->identically_zero()) return inner;
  return std::make_shared<ComposedFunction>(std::move(inner), m, times_derivative);
}

MapSpec::MapSpec(Function h_prime, Function q, std::string label)
    : h_prime_(std::move(h_prime)), q_(std::move(q)), label_(std::move(label)) {
  if (!h_prime_ || !q_) throw std::invalid_argument("map spec needs both h' and q");
  const auto* hc = h_prime_->coefficients();
  const auto* qc = q_->coefficients();
  if (hc && qc) {
    auto prim = std::make_shared<Primitives>();
    const auto hq = poly_mul(*hc, *qc);
    prim->h = poly_primitive(*hc);
    prim->g = poly_primitive(poly_mul(hq, *qc));
    prim->p = poly_primitive(hq);
    primitives_ = std::move(prim);
  }
  cache_ = make_surface_jet_cache();
}

MapSpec compose_with_automorphism(const MapSpec& spec, const PlanarMoebius& m) {
  return {make_composed(spec.h_prime_ptr(), m, true), make_composed(spec.q_ptr(), m, false), spec.label() + "∘M"};
}

namespace builtin {

MapSpec identity() { return {make_constant(1.0), make_constant(0.0), "identity"}; }

MapSpec alpha_power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("alpha_power needs 0 < alpha <= 2");
  return {make_alpha_power_derivative(alpha), make_constant(0.0), "alpha_power"};
}

MapSpec shear(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("shear needs 0 <= alpha < 1");
  return {make_constant(1.0), make_constant(std::sqrt(alpha)), "shear"};
}

MapSpec koebe() { return {make_koebe_derivative(), make_constant(0.0), "koebe"}; }

MapSpec n0_extremal() { return {make_n0_derivative(), make_constant(0.0), "n0_extremal"}; }

MapSpec harmonic_power(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("harmonic_power needs 0 < alpha <= 2");
  if (!(std::abs(beta) < 1.0)) throw std::invalid_argument("harmonic_power needs |beta| < 1");
  return {make_alpha_power_derivative(alpha), make_series({0.0, beta}), "harmonic_power"};
}

std::vector<std::string> names() {
  return {"identity", "alpha_power", "shear", "koebe", "n0_extremal", "harmonic_power"};
}

MapSpec by_name(const std::string& name, const Params& params) {
  if (name == "identity") {
    check_keys(params, {}, name);
    return identity();
  }
  if (name == "alpha_power") {
    check_keys(params, {"alpha"}, name);
    return alpha_power(param(params, "alpha", 1.0 / std::sqrt(2.0)));
  }
  if (name == "shear") {
    check_keys(params, {"alpha"}, name);
    return shear(param(params, "alpha", 0.25));
  }
  if (name == "koebe") {
    check_keys(params, {}, name);
    return koebe();
  }
  if (name == "n0_extremal") {
    check_keys(params, {}, name);
    return n0_extremal();
  }
  if (name == "harmonic_power") {
    check_keys(params, {"alpha", "beta"}, name);
    return harmonic_power(param(params, "alpha", 0.95), param(params, "beta", 0.1));
  }
  throw std::invalid_argument("unknown builtin map '" + name + "'");
}

}  // namespace builtin

}  // namespace harmext
