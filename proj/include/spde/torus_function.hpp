#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace spde {

/// One harmonic a*cos(2*pi*k.x + phase); building block for variable
/// coefficients and separable spatial factors.
struct Harmonic {
  double amplitude = 0.0;
  std::vector<int> wavevector;
  double phase = 0.0;

  double eval(const std::vector<double>& x) const {
    double phase_acc = phase;
    for (std::size_t a = 0; a < wavevector.size(); ++a)
      phase_acc += 2.0 * std::numbers::pi * wavevector[a] * x[a];
    return amplitude * std::cos(phase_acc);
  }

  static Harmonic constant(double c, int dim) {
    return Harmonic{c, std::vector<int>(dim, 0), 0.0};
  }

  double sup_abs() const { return std::abs(amplitude); }

  /// sup |D^alpha| for derivative orders per axis.
  double derivative_bound(const std::vector<int>& alpha) const {
    double b = std::abs(amplitude);
    for (std::size_t a = 0; a < alpha.size(); ++a)
      b *= std::pow(std::abs(2.0 * std::numbers::pi * wavevector[a]), alpha[a]);
    return b;
  }
};

/// Smooth torus coefficient: constant plus harmonics.
struct CoefficientFunction {
  double constant = 0.0;
  std::vector<Harmonic> harmonics;

  double eval(const std::vector<double>& x) const {
    double v = constant;
    for (const auto& h : harmonics) v += h.eval(x);
    return v;
  }

  int max_wavenumber() const {
    int m = 0;
    for (const auto& h : harmonics)
      for (int k : h.wavevector) m = std::max(m, std::abs(k));
    return m;
  }
};

}  // namespace spde
