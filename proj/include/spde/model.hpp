#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spde/scalar_function.hpp"
#include "spde/spectral_field.hpp"

namespace spde {

/// One summand a_alpha D^alpha f_alpha(u) of the nonlinearity.
struct NonlinearityTerm {
  double a = 0.0;
  MultiIndex alpha;
  ScalarFunction f = ScalarFunction::identity();
};

/// F(u) = sum a_alpha D^alpha f_alpha(u); |alpha| <= 2l-1 enforced against
/// the operator order at configuration time.
struct NonlinearitySpec {
  std::vector<NonlinearityTerm> terms;

  int gamma() const {
    int g = 0;
    for (const auto& t : terms)
      if (t.a != 0.0) ++g;
    return g;
  }
  int max_derivative_order() const {
    int m = 0;
    for (const auto& t : terms) m = std::max(m, t.alpha.order());
    return m;
  }
  void validate(int operator_order) const;
};

/// sigma_i(x, xi) = g_i(x) h_i(xi), i = 1..d.
struct DiffusionSpec {
  std::vector<SeparableFunction> components;
  int noise_dim() const { return static_cast<int>(components.size()); }
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

struct GrowthCertificate {
  double c_growth = 0.0;  // sup (sum sigma_i^2) / (1 + xi^2), or growth of f
  double c_lip = 0.0;     // max certified first-derivative bound
};

/// Pseudo-spectral superposition: f_alpha(u) on the doubly-oversampled grid,
/// transformed, differentiated, scaled, summed.
SpectralField eval_nonlinearity(const NonlinearitySpec& spec, const SpectralField& u);

/// sum_i sigma_i(x, u(x)) dw_i, transformed back to the cutoff of u.
SpectralField eval_diffusion_increment(const DiffusionSpec& spec, const SpectralField& u,
                                       std::span<const double> dw);

/// C_p = (E|Z|^p)^{1/p} for standard normal Z.
double gaussian_moment_constant(double p);

/// C_p (integral (sum_i sigma_i(y,u(y))^2)^{p/2} dy)^{1/p}: the exact p-th
/// moment of the Gaussian sum, an upper bound of the gamma-radonifying norm.
double gamma_norm_closed(const DiffusionSpec& spec, const SpectralField& u, double p);

/// Monte Carlo estimate of sqrt(E || sum_i xi_i sigma_i(.,u) ||_{L^p}^2),
/// reproducible from the seed; per-sample randomness is keyed by the sample
/// index, so the result does not depend on evaluation order.
McEstimate gamma_norm_mc(const DiffusionSpec& spec, const SpectralField& u, double p,
                         int samples, std::uint64_t seed);

GrowthCertificate growth_and_lipschitz_certify(const DiffusionSpec& spec);
GrowthCertificate growth_and_lipschitz_certify(const NonlinearitySpec& spec);

}  // namespace spde
