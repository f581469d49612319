#pragma once

#include <string>

#include "spde/chain_rule.hpp"
#include "spde/scalar_function.hpp"
#include "spde/spectral_field.hpp"

namespace spde {

struct InterpolationRecord {
  double lhs = 0.0;    // ||f||_{W^{|alpha|, mp/|alpha|}}
  double rhs = 0.0;    // ||f||^{1-theta}_{W^{1,mp}} ||f||^theta_{W^{m,p}}
  double theta = 0.0;  // (|alpha|-1)/(m-1)
};

struct MoserReport {
  double lhs = 0.0;  // ||G(f)||_{W^{m,p}}
  double rhs = 0.0;  // 1 + ||f||^m_{W^{1,mp}} + ||f||_{W^{m,p}}
  double ratio = 0.0;
  int m = 0;
  double p = 0.0;
  std::string g_name;
  std::string f_desc;
};

struct FirstOrderRecord {
  double lhs = 0.0;  // ||G(f)||_{W^{1,p}}
  double rhs = 0.0;  // 1 + ||f||_{W^{1,p}}
};

/// Superposition norm against the Moser right-hand side.
MoserReport moser_check(const ScalarFunction& G, const SpectralField& f, int m,
                        double p);

/// Same with the separable two-argument outer function G(x, f(x)).
MoserReport moser_check_x_dependent(const SeparableFunction& G, const SpectralField& f,
                                    int m, double p);

/// Interpolation inequality probe for 1 <= |alpha| <= m.
InterpolationRecord interpolation_check(const SpectralField& f, int m, double p,
                                        const MultiIndex& alpha);

/// First-order bound ||G(f)||_{W^{1,p}} vs 1 + ||f||_{W^{1,p}}.
FirstOrderRecord first_order_check(const ScalarFunction& G, const SpectralField& f,
                                   double p);

/// Discrete Hoelder norm: max_{|alpha|<=k} sup |D^alpha u| plus the
/// lambda-quotient of the k-th derivatives over grid pairs with the periodic
/// distance.
double holder_norm(const SpectralField& u, int k, double lambda);

/// G(x, f(x)) projected back to the cutoff of f (shared by the checks).
SpectralField superpose(const ScalarFunction& G, const SpectralField& f);
SpectralField superpose_x_dependent(const SeparableFunction& G, const SpectralField& f);

}  // namespace spde
