#include "spde/chain_rule.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spde {

namespace {

// Canonical key: (outer order, sorted inner indices).
using TermKey = std::pair<int, std::vector<std::vector<int>>>;

TermKey key_of(int outer, std::vector<MultiIndex> inner) {
  std::sort(inner.begin(), inner.end());
  std::vector<std::vector<int>> flat;
  flat.reserve(inner.size());
  for (auto& a : inner) flat.push_back(a.comps);
  return {outer, std::move(flat)};
}

}  // namespace

std::vector<ChainRuleTerm> faa_di_bruno_terms(const MultiIndex& gamma) {
  if (gamma.order() < 1)
    throw std::invalid_argument("faa_di_bruno_terms: |gamma| must be >= 1");
  const int dim = gamma.dim();

  // Seed G(f), then differentiate axis by axis.  Product rule: either the
  // outer order increases (new factor D^{e_axis} f), or one inner factor
  // picks up the derivative.
  std::map<TermKey, long long> terms;
  terms[key_of(0, {})] = 1;
  for (int axis = 0; axis < dim; ++axis) {
    for (int rep = 0; rep < gamma[axis]; ++rep) {
      std::map<TermKey, long long> next;
      for (const auto& [key, coeff] : terms) {
        const auto& [outer, flat_inner] = key;
        std::vector<MultiIndex> inner;
        inner.reserve(flat_inner.size());
        for (const auto& c : flat_inner) inner.emplace_back(c);

        {
          auto grown = inner;
          MultiIndex unit = MultiIndex::zero(dim).plus(axis);
          grown.push_back(unit);
          next[key_of(outer + 1, std::move(grown))] += coeff;
        }
        for (std::size_t i = 0; i < inner.size(); ++i) {
          auto bumped = inner;
          bumped[i] = bumped[i].plus(axis);
          next[key_of(outer, std::move(bumped))] += coeff;
        }
      }
      terms = std::move(next);
    }
  }

  std::vector<ChainRuleTerm> out;
  out.reserve(terms.size());
  for (const auto& [key, coeff] : terms) {
    ChainRuleTerm t;
    t.outer_order = key.first;
    for (const auto& c : key.second) t.inner.emplace_back(c);
    t.constant = coeff;
    out.push_back(std::move(t));
  }
  return out;
}

SpectralField chain_rule_eval(const ScalarFunction& G, const SpectralField& f,
                              const MultiIndex& gamma) {
  if (gamma.dim() != f.dim())
    throw std::invalid_argument("chain_rule_eval: dimension mismatch");
  if (gamma.order() > G.certified_order())
    throw std::invalid_argument("chain_rule_eval: G not certified to |gamma|");

  const auto terms = faa_di_bruno_terms(gamma);
  const GridField grid_f = to_grid(f, 2);
  const std::size_t npts = grid_f.points();

  // Distinct inner derivative grids, computed once.
  std::map<std::vector<int>, GridField> der_grids;
  for (const auto& t : terms)
    for (const auto& a : t.inner)
      if (!der_grids.count(a.comps)) der_grids[a.comps] = to_grid(derivative(f, a), 2);

  GridField acc(grid_f.dim, grid_f.points_per_axis);
  std::vector<double> outer_vals(npts);
  for (const auto& t : terms) {
    for (std::size_t j = 0; j < npts; ++j)
      outer_vals[j] = G.derivative(t.outer_order, grid_f.values[j]);
    for (std::size_t j = 0; j < npts; ++j) {
      double prod = outer_vals[j];
      for (const auto& a : t.inner) prod *= der_grids.at(a.comps).values[j];
      acc.values[j] += static_cast<double>(t.constant) * prod;
    }
  }
  return forward_transform(acc, f.cutoff());
}

}  // namespace spde
