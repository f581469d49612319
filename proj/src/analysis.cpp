#include "spde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spde {

SpectralField superpose(const ScalarFunction& G, const SpectralField& f) {
  const GridField grid = to_grid(f, 2);
  GridField out(grid.dim, grid.points_per_axis);
  for (std::size_t j = 0; j < grid.points(); ++j) out.values[j] = G(grid.values[j]);
  return forward_transform(out, f.cutoff());
}

SpectralField superpose_x_dependent(const SeparableFunction& G,
                                    const SpectralField& f) {
  const GridField grid = to_grid(f, 2);
  GridField out(grid.dim, grid.points_per_axis);
  std::vector<double> x(grid.dim);
  for (std::size_t j = 0; j < grid.points(); ++j) {
    for (int a = 0; a < grid.dim; ++a) x[a] = grid.coord(j, a);
    out.values[j] = G.eval(x, grid.values[j]);
  }
  return forward_transform(out, f.cutoff());
}

namespace {

MoserReport moser_core(const SpectralField& composed, const SpectralField& f, int m,
                       double p) {
  MoserReport r;
  r.m = m;
  r.p = p;
  r.lhs = sobolev_norm(composed, m, p);
  r.rhs = 1.0 + std::pow(sobolev_norm(f, 1, m * p), m) + sobolev_norm(f, m, p);
  r.ratio = r.lhs / r.rhs;
  return r;
}

}  // namespace

MoserReport moser_check(const ScalarFunction& G, const SpectralField& f, int m,
                        double p) {
  if (m < 2) throw std::invalid_argument("moser_check: m must be >= 2");
  if (m > G.certified_order())
    throw std::invalid_argument("moser_check: G not certified to order m");
  MoserReport r = moser_core(superpose(G, f), f, m, p);
  r.g_name = G.name();
  return r;
}

MoserReport moser_check_x_dependent(const SeparableFunction& G, const SpectralField& f,
                                    int m, double p) {
  if (m < 2) throw std::invalid_argument("moser_check: m must be >= 2");
  if (m > G.h.certified_order())
    throw std::invalid_argument("moser_check: G not certified to order m");
  MoserReport r = moser_core(superpose_x_dependent(G, f), f, m, p);
  r.g_name = "separable:" + G.h.name();
  return r;
}

InterpolationRecord interpolation_check(const SpectralField& f, int m, double p,
                                        const MultiIndex& alpha) {
  const int order = alpha.order();
  if (m < 2) throw std::invalid_argument("interpolation_check: m must be >= 2");
  if (order < 1 || order > m)
    throw std::invalid_argument("interpolation_check: need 1 <= |alpha| <= m");
  InterpolationRecord r;
  r.theta = static_cast<double>(order - 1) / (m - 1);
  r.lhs = sobolev_norm(f, order, static_cast<double>(m) * p / order);
  r.rhs = std::pow(sobolev_norm(f, 1, m * p), 1.0 - r.theta) *
          std::pow(sobolev_norm(f, m, p), r.theta);
  return r;
}

FirstOrderRecord first_order_check(const ScalarFunction& G, const SpectralField& f,
                                   double p) {
  FirstOrderRecord r;
  r.lhs = sobolev_norm(superpose(G, f), 1, p);
  r.rhs = 1.0 + sobolev_norm(f, 1, p);
  return r;
}

double holder_norm(const SpectralField& u, int k, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("holder_norm: lambda must be in (0,1)");
  double sup_part = 0.0;
  for (const auto& alpha : multi_indices_up_to(u.dim(), k))
    sup_part = std::max(sup_part, sup_norm(derivative(u, alpha)));

  double quotient = 0.0;
  for (const auto& alpha : multi_indices_of_order(u.dim(), k)) {
    const GridField g = to_grid(derivative(u, alpha), 2);
    const std::size_t n = g.points();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dist2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
          double d = std::abs(g.coord(i, a) - g.coord(j, a));
          d = std::min(d, 1.0 - d);  // periodic distance per axis
          dist2 += d * d;
        }
        const double dist = std::sqrt(dist2);
        if (dist == 0.0) continue;
        quotient = std::max(
            quotient, std::abs(g.values[i] - g.values[j]) / std::pow(dist, lambda));
      }
    }
  }
  return sup_part + quotient;
}

}  // namespace spde
