#pragma once

#include <vector>

#include "spde/scalar_function.hpp"
#include "spde/spectral_field.hpp"

namespace spde {

/// One summand C * G^(outer_order)(f) * prod_i D^{inner[i]} f of the
/// multivariate chain rule; inner multi-indices are nonzero and sorted.
struct ChainRuleTerm {
  int outer_order = 0;
  std::vector<MultiIndex> inner;
  long long constant = 1;
};

/// Complete expansion of D^gamma G(f), generated by repeated symbolic
/// differentiation of the seed term G(f) with canonical merging.
std::vector<ChainRuleTerm> faa_di_bruno_terms(const MultiIndex& gamma);

/// Evaluate D^gamma G(f) through the expansion, pseudo-spectrally.
SpectralField chain_rule_eval(const ScalarFunction& G, const SpectralField& f,
                              const MultiIndex& gamma);

}  // namespace spde
