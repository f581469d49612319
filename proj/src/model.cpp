#include "spde/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spde/rng.hpp"

namespace spde {

void NonlinearitySpec::validate(int operator_order) const {
  for (const auto& t : terms)
    if (t.alpha.order() > operator_order - 1)
      throw std::invalid_argument("nonlinearity: |alpha| must be <= 2l-1");
}

namespace {

std::vector<double> grid_point(const GridField& g, std::size_t flat) {
  std::vector<double> x(g.dim);
  for (int a = 0; a < g.dim; ++a) x[a] = g.coord(flat, a);
  return x;
}

}  // namespace

SpectralField eval_nonlinearity(const NonlinearitySpec& spec, const SpectralField& u) {
  SpectralField acc(u.dim(), u.cutoff());
  if (spec.terms.empty()) return acc;
  const GridField grid_u = to_grid(u, 2);
  GridField work(grid_u.dim, grid_u.points_per_axis);
  for (const auto& term : spec.terms) {
    if (term.a == 0.0) continue;
    for (std::size_t j = 0; j < grid_u.points(); ++j)
      work.values[j] = term.f(grid_u.values[j]);
    SpectralField composed = forward_transform(work, u.cutoff());
    acc += term.a * derivative(composed, term.alpha);
  }
  return acc;
}

SpectralField eval_diffusion_increment(const DiffusionSpec& spec, const SpectralField& u,
                                       std::span<const double> dw) {
  if (static_cast<int>(dw.size()) != spec.noise_dim())
    throw std::invalid_argument("diffusion: increment length mismatch");
  SpectralField out(u.dim(), u.cutoff());
  if (spec.components.empty()) return out;
  const GridField grid_u = to_grid(u, 2);
  GridField work(grid_u.dim, grid_u.points_per_axis);
  for (std::size_t j = 0; j < grid_u.points(); ++j) {
    const auto x = grid_point(grid_u, j);
    double v = 0.0;
    for (int i = 0; i < spec.noise_dim(); ++i)
      v += dw[i] * spec.components[i].eval(x, grid_u.values[j]);
    work.values[j] = v;
  }
  return forward_transform(work, u.cutoff());
}

double gaussian_moment_constant(double p) {
  if (p < 1.0) throw std::invalid_argument("gaussian_moment_constant: p must be >= 1");
  // E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
  const double log_moment = 0.5 * p * std::numbers::ln2 +
                            std::lgamma(0.5 * (p + 1.0)) -
                            0.5 * std::log(std::numbers::pi);
  return std::exp(log_moment / p);
}

namespace {

// sigma_i(x, u(x)) on the oversampled grid, one vector per component.
std::vector<std::vector<double>> diffusion_grids(const DiffusionSpec& spec,
                                                 const SpectralField& u) {
  const GridField grid_u = to_grid(u, 2);
  std::vector<std::vector<double>> out(spec.noise_dim());
  for (int i = 0; i < spec.noise_dim(); ++i) {
    out[i].resize(grid_u.points());
    for (std::size_t j = 0; j < grid_u.points(); ++j)
      out[i][j] = spec.components[i].eval(grid_point(grid_u, j), grid_u.values[j]);
  }
  return out;
}

}  // namespace

double gamma_norm_closed(const DiffusionSpec& spec, const SpectralField& u, double p) {
  if (p < 2.0) throw std::invalid_argument("gamma_norm_closed: p must be >= 2");
  auto grids = diffusion_grids(spec, u);
  if (grids.empty()) return 0.0;
  const std::size_t n = grids[0].size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (const auto& g : grids) s2 += g[j] * g[j];
    acc += std::pow(s2, 0.5 * p);
  }
  const double integral = acc / static_cast<double>(n);
  return gaussian_moment_constant(p) * std::pow(integral, 1.0 / p);
}

McEstimate gamma_norm_mc(const DiffusionSpec& spec, const SpectralField& u, double p,
                         int samples, std::uint64_t seed) {
  if (p < 2.0) throw std::invalid_argument("gamma_norm_mc: p must be >= 2");
  if (samples < 100) throw std::invalid_argument("gamma_norm_mc: need >= 100 samples");
  auto grids = diffusion_grids(spec, u);
  const int d = spec.noise_dim();
  const std::size_t n = grids.empty() ? 1 : grids[0].size();

  double sum = 0.0, sumsq = 0.0;
  std::vector<double> xi(d);
  std::vector<double> combined(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i)
      xi[i] = counter_gaussian(seed, RngStream::kGammaSample,
                               static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(i));
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (int i = 0; i < d; ++i) v += xi[i] * grids[i][j];
      acc += std::pow(std::abs(v), p);
    }
    // ||sum xi_i sigma_i||_{L^p}^2 for this draw
    const double y = std::pow(acc / static_cast<double>(n), 2.0 / p);
    sum += y;
    sumsq += y * y;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, (sumsq - samples * mean * mean) / (samples - 1));
  const double se_mean = std::sqrt(var / samples);
  McEstimate out;
  out.estimate = std::sqrt(mean);
  // delta method for the square root
  out.std_error = out.estimate > 0.0 ? se_mean / (2.0 * out.estimate) : se_mean;
  return out;
}

namespace {

// sup over xi of h(xi)^2 / (1 + xi^2).  Affine in closed form (the sup is
// the top eigenvalue of [[b^2, ab], [ab, a^2]], i.e. a^2 + b^2); bounded
// families by dense sampling with a pad, their tails vanish.
double state_growth_sup(const ScalarFunction& h) {
  if (h.family() == ScalarFunction::Family::Affine) {
    const double a = h.parameters()[0], b = h.parameters()[1];
    return a * a + b * b;
  }
  const double reach = 100.0;
  const int samples = 20000;
  double sup = 0.0;
  for (int s = 0; s <= samples; ++s) {
    const double xi = -reach + 2.0 * reach * s / samples;
    const double v = h(xi);
    sup = std::max(sup, v * v / (1.0 + xi * xi));
  }
  return sup * 1.001;  // pad: the sup may sit between sample points
}

}  // namespace

GrowthCertificate growth_and_lipschitz_certify(const DiffusionSpec& spec) {
  GrowthCertificate cert;
  for (const auto& comp : spec.components) {
    const double g2 = comp.g.sup_abs() * comp.g.sup_abs();
    cert.c_growth += g2 * state_growth_sup(comp.h);
    cert.c_lip = std::max(cert.c_lip, comp.state_lipschitz());
  }
  return cert;
}

GrowthCertificate growth_and_lipschitz_certify(const NonlinearitySpec& spec) {
  GrowthCertificate cert;
  for (const auto& term : spec.terms) {
    if (term.a == 0.0) continue;
    const double c = term.f.linear_growth_constant();
    cert.c_growth = std::max(cert.c_growth, 2.0 * c * c);
    cert.c_lip = std::max(cert.c_lip, term.f.derivative_bound(1));
  }
  return cert;
}

}  // namespace spde
