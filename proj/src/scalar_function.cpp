#include "spde/scalar_function.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spde {

namespace {

// sup_R |d^j tanh| and |d^j atan| for j = 1..6, rounded up in the last digit.
constexpr std::array<double, 6> kTanhSup = {1.0,      0.769801, 2.0,
                                            4.085887, 16.0,     52.26596};
constexpr std::array<double, 6> kAtanSup = {1.0,     0.649520, 2.0,
                                            4.66856, 24.0,     100.459};

// Polynomials P_j with d^j tanh = P_j(tanh), P_1 = 1 - y^2,
// P_{j+1} = P_j' * (1 - y^2); coefficients in increasing degree.
const std::vector<std::vector<double>>& tanh_polys() {
  static const std::vector<std::vector<double>> polys = [] {
    std::vector<std::vector<double>> out;
    std::vector<double> p = {1.0, 0.0, -1.0};
    for (int j = 1; j <= ScalarFunction::kCertifiedOrder; ++j) {
      out.push_back(p);
      std::vector<double> dp(p.size() >= 1 ? p.size() - 1 : 0, 0.0);
      for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<double>(i);
      std::vector<double> next(dp.size() + 2, 0.0);
      for (std::size_t i = 0; i < dp.size(); ++i) {
        next[i] += dp[i];
        next[i + 2] -= dp[i];
      }
      p = next;
    }
    return out;
  }();
  return polys;
}

double polyval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

std::vector<double> polyder(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

// Saturation ramp: W(u) = int_0^u (1 - s^7)^7 ds on [0,1].  Flat to 6th
// order at both ends, so the clamp below is C^6 across the junctions.
const std::vector<double>& ramp_poly() {
  static const std::vector<double> w = [] {
    std::vector<double> phi(50, 0.0);
    double binom = 1.0;
    for (int i = 0; i <= 7; ++i) {
      phi[7 * i] = (i % 2 == 0 ? binom : -binom);
      binom = binom * (7 - i) / (i + 1);
    }
    std::vector<double> integ(phi.size() + 1, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i)
      integ[i + 1] = phi[i] / static_cast<double>(i + 1);
    return integ;
  }();
  return w;
}

// Jet (truncated Taylor) arithmetic for composing p with the clamp: entries
// are Taylor coefficients around the evaluation point.
using Jet = std::array<double, ScalarFunction::kCertifiedOrder + 1>;

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet r{};
  for (int i = 0; i <= ScalarFunction::kCertifiedOrder; ++i)
    for (int j = 0; i + j <= ScalarFunction::kCertifiedOrder; ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

Jet poly_of_jet(const std::vector<double>& coeffs, const Jet& w) {
  Jet r{};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    r = jet_mul(r, w);
    r[0] += coeffs[i];
  }
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ScalarFunction::ScalarFunction(Family f, std::vector<double> params)
    : family_(f), params_(std::move(params)) {
  certify();
}

ScalarFunction ScalarFunction::affine(double a, double b) {
  return ScalarFunction(Family::Affine, {a, b});
}

ScalarFunction ScalarFunction::sine(double amplitude, double frequency) {
  return ScalarFunction(Family::Sine, {amplitude, frequency});
}

ScalarFunction ScalarFunction::tanh_scaled(double a) {
  return ScalarFunction(Family::TanhScaled, {a});
}

ScalarFunction ScalarFunction::atan_scaled(double a) {
  return ScalarFunction(Family::AtanScaled, {a});
}

ScalarFunction ScalarFunction::polynomial_clamped(std::vector<double> coeffs,
                                                  double radius) {
  if (radius <= 0.0)
    throw std::invalid_argument("polynomial_clamped: radius must be > 0");
  if (coeffs.empty()) coeffs = {0.0};
  std::vector<double> params = {radius};
  params.insert(params.end(), coeffs.begin(), coeffs.end());
  return ScalarFunction(Family::PolynomialClamped, std::move(params));
}

double ScalarFunction::derivative(int order, double xi) const {
  if (order < 0 || order > kCertifiedOrder)
    throw std::invalid_argument("ScalarFunction: derivative order not certified");
  switch (family_) {
    case Family::Affine: {
      if (order == 0) return params_[0] * xi + params_[1];
      if (order == 1) return params_[0];
      return 0.0;
    }
    case Family::Sine: {
      const double amp = params_[0], freq = params_[1];
      return amp * std::pow(freq, order) *
             std::sin(freq * xi + order * std::numbers::pi / 2.0);
    }
    case Family::TanhScaled: {
      const double a = params_[0];
      if (order == 0) return a * std::tanh(xi);
      return a * polyval(tanh_polys()[order - 1], std::tanh(xi));
    }
    case Family::AtanScaled: {
      const double a = params_[0];
      if (order == 0) return a * std::atan(xi);
      const double theta = std::atan(xi);
      return a * factorial(order - 1) * std::pow(1.0 + xi * xi, -0.5 * order) *
             std::sin(order * (theta + std::numbers::pi / 2.0));
    }
    case Family::PolynomialClamped: {
      const double radius = params_[0];
      const std::vector<double> coeffs(params_.begin() + 1, params_.end());
      const double len = radius;  // transition length
      Jet w{};
      double axi = std::abs(xi);
      double sign = xi < 0.0 ? -1.0 : 1.0;
      if (axi <= radius) {
        w[0] = xi;
        w[1] = 1.0;
      } else if (axi >= radius + len) {
        w[0] = sign * (radius + len * polyval(ramp_poly(), 1.0));
      } else {
        const double u = (axi - radius) / len;
        std::vector<double> ramp = ramp_poly();
        w[0] = sign * (radius + len * polyval(ramp, u));
        for (int j = 1; j <= kCertifiedOrder; ++j) {
          ramp = polyder(ramp);
          // d^j/dxi^j of the odd extension is sign^(j+1) W^(j)(u) / len^(j-1);
          // stored as the Taylor coefficient, so divide by j!.
          const double parity = (j % 2 == 1) ? 1.0 : sign;
          w[j] = parity * std::pow(len, 1 - j) * polyval(ramp, u) / factorial(j);
        }
      }
      Jet f = poly_of_jet(coeffs, w);
      return f[order] * factorial(order);
    }
  }
  throw std::logic_error("ScalarFunction: unknown family");
}

void ScalarFunction::certify() {
  bounds_.assign(kCertifiedOrder, 0.0);
  switch (family_) {
    case Family::Affine: {
      bounds_[0] = std::abs(params_[0]);
      growth_ = std::max(std::abs(params_[0]), std::abs(params_[1]));
      return;
    }
    case Family::Sine: {
      const double amp = std::abs(params_[0]);
      const double freq = std::abs(params_[1]);
      for (int j = 1; j <= kCertifiedOrder; ++j) bounds_[j - 1] = amp * std::pow(freq, j);
      growth_ = amp;
      return;
    }
    case Family::TanhScaled: {
      const double a = std::abs(params_[0]);
      for (int j = 1; j <= kCertifiedOrder; ++j) bounds_[j - 1] = a * kTanhSup[j - 1];
      growth_ = a;
      return;
    }
    case Family::AtanScaled: {
      const double a = std::abs(params_[0]);
      for (int j = 1; j <= kCertifiedOrder; ++j) bounds_[j - 1] = a * kAtanSup[j - 1];
      growth_ = a * std::numbers::pi / 2.0;
      return;
    }
    case Family::PolynomialClamped: {
      // Derivatives vanish outside [-(R+L), R+L]; sample densely there and
      // pad.  The value itself is bounded, so linear growth is its sup.
      const double radius = params_[0];
      const double reach = 2.0 * radius;
      const int samples = 20000;
      double sup_val = 0.0;
      std::vector<double> sup_der(kCertifiedOrder, 0.0);
      for (int s = 0; s <= samples; ++s) {
        const double xi = -reach + 2.0 * reach * s / samples;
        sup_val = std::max(sup_val, std::abs(derivative(0, xi)));
        for (int j = 1; j <= kCertifiedOrder; ++j)
          sup_der[j - 1] = std::max(sup_der[j - 1], std::abs(derivative(j, xi)));
      }
      for (int j = 1; j <= kCertifiedOrder; ++j) bounds_[j - 1] = 1.05 * sup_der[j - 1];
      growth_ = sup_val;
      return;
    }
  }
}

double ScalarFunction::derivative_bound(int order) const {
  if (order < 1 || order > kCertifiedOrder)
    throw std::invalid_argument("ScalarFunction: bound order not certified");
  return bounds_[order - 1];
}

double ScalarFunction::linear_growth_constant() const { return growth_; }

std::string ScalarFunction::name() const {
  switch (family_) {
    case Family::Affine: return "affine";
    case Family::Sine: return "sine";
    case Family::TanhScaled: return "tanh_scaled";
    case Family::AtanScaled: return "atan_scaled";
    case Family::PolynomialClamped: return "polynomial_clamped";
  }
  return "?";
}

}  // namespace spde
