#pragma once

#include <string>
#include <vector>

#include "spde/torus_function.hpp"

namespace spde {

/// Catalog of smooth outer functions with certified derivative bounds.
/// Every member is C^6 on R with sup |f^(j)| <= derivative_bound(j) for
/// 1 <= j <= 6 and |f(xi)| <= linear_growth_constant() * (1 + |xi|).
class ScalarFunction {
 public:
  enum class Family { Affine, Sine, TanhScaled, AtanScaled, PolynomialClamped };

  /// a*xi + b
  static ScalarFunction affine(double a, double b);
  /// amplitude * sin(frequency * xi)
  static ScalarFunction sine(double amplitude, double frequency);
  /// a * tanh(xi)
  static ScalarFunction tanh_scaled(double a);
  /// a * atan(xi)
  static ScalarFunction atan_scaled(double a);
  /// p(xi) exactly on |xi| <= radius, smoothly saturated beyond; coeffs are
  /// p's coefficients in increasing degree.
  static ScalarFunction polynomial_clamped(std::vector<double> coeffs, double radius);

  static ScalarFunction identity() { return affine(1.0, 0.0); }
  static ScalarFunction constant(double c) { return affine(0.0, c); }

  double operator()(double xi) const { return derivative(0, xi); }
  /// j-th derivative, closed form; j in [0, certified_order()].
  double derivative(int order, double xi) const;

  int certified_order() const { return kCertifiedOrder; }
  /// Certified sup_R |f^(j)|, 1 <= j <= certified_order().
  double derivative_bound(int order) const;
  double linear_growth_constant() const;

  Family family() const { return family_; }
  const std::vector<double>& parameters() const { return params_; }
  std::string name() const;

  static constexpr int kCertifiedOrder = 6;

 private:
  ScalarFunction(Family f, std::vector<double> params);
  void certify();

  Family family_;
  std::vector<double> params_;
  std::vector<double> bounds_;  // index j-1 holds sup |f^(j)|
  double growth_ = 0.0;
};

/// Separable two-argument catalog function G(x, xi) = g(x) * h(xi); the shape
/// used for diffusion components sigma_i and x-dependent outer functions.
struct SeparableFunction {
  Harmonic g;
  ScalarFunction h;

  double eval(const std::vector<double>& x, double xi) const {
    return g.eval(x) * h(xi);
  }
  /// |G(x,xi)| <= C (1 + |xi|)
  double linear_growth_constant() const {
    return g.sup_abs() * h.linear_growth_constant();
  }
  /// sup |d_xi G|; the Lipschitz constant in the state variable.
  double state_lipschitz() const { return g.sup_abs() * h.derivative_bound(1); }
};

}  // namespace spde
