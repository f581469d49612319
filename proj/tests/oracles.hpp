// Test-only oracles, independent of the library's computational paths:
// finite differences (Fornberg weights), composite-Simpson quadrature,
// Gaussian moments by quadrature, Bell numbers by the triangle recursion.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// Fornberg weights for the m-th derivative at 0 from the given nodes.
inline std::vector<double> fd_weights(int m, const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<std::vector<double>>> d(
      m + 1, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, m); ++k)
        d[k][i][j] =
            (nodes[i] * d[k][i - 1][j] - (k > 0 ? k * d[k - 1][i - 1][j] : 0.0)) / c3;
    }
    for (int k = 0; k <= std::min(i, m); ++k)
      d[k][i][i] = c1 / c2 *
                   ((k > 0 ? k * d[k - 1][i - 1][i - 1] : 0.0) -
                    nodes[i - 1] * d[k][i - 1][i - 1]);
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = d[m][n - 1][j];
  return w;
}

// m-th derivative of a scalar function by a 7-point central stencil.
inline double fd_derivative(const std::function<double(double)>& f, double x, int m,
                            double h) {
  static const std::vector<double> nodes = {-3, -2, -1, 0, 1, 2, 3};
  const auto w = fd_weights(m, nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * f(x + nodes[i] * h);
  return acc / std::pow(h, m);
}

// Mixed partial derivative of a function on R^dim by tensorized stencils.
inline double fd_partial(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> x, const std::vector<int>& alpha,
                         double h) {
  int axis = -1;
  for (std::size_t a = 0; a < alpha.size(); ++a)
    if (alpha[a] > 0) { axis = static_cast<int>(a); break; }
  if (axis < 0) return f(x);
  std::vector<int> rest = alpha;
  const int m = rest[axis];
  rest[axis] = 0;
  static const std::vector<double> nodes = {-3, -2, -1, 0, 1, 2, 3};
  const auto w = fd_weights(m, nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<double> shifted = x;
    shifted[axis] += nodes[i] * h;
    acc += w[i] * fd_partial(f, shifted, rest, h);
  }
  return acc / std::pow(h, m);
}

// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// (E|Z|^p)^{1/p} for standard normal Z by quadrature.
inline double gaussian_moment_quadrature(double p) {
  auto integrand = [p](double z) {
    return std::pow(std::abs(z), p) *
           std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  };
  return std::pow(simpson(integrand, -14.0, 14.0, 1 << 16), 1.0 / p);
}

// Bell numbers via the Bell triangle.
inline long long bell_number(int n) {
  if (n <= 0) return 1;
  std::vector<long long> row = {1};
  for (int r = 2; r <= n; ++r) {
    std::vector<long long> next = {row.back()};
    for (long long v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.back();
}

}  // namespace oracles
