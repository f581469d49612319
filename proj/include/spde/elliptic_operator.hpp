#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spde/spectral_field.hpp"
#include "spde/torus_function.hpp"

namespace spde {

/// Exact coefficients of a constant-plus-harmonics torus function.
SpectralField coefficient_field(const CoefficientFunction& fn, int dim, int cutoff);

struct SmoothingCheck {
  double measured = 0.0;
  double bound = 0.0;
};

class GalerkinData;  // eigendecomposition cache, definition private to the .cpp

/// The negative generator -A: either a diagonal Fourier symbol
/// lambda(k) = (a|2 pi k|^2 + mu)^l, or a divergence-form operator
/// -sum d_i(A_ij d_j .) + c with a Galerkin realization on the retained
/// modes.  Positive by construction (0 in the resolvent set).
class EllipticOperatorSpec {
 public:
  enum class Kind { Diagonal, DivergenceForm };

  static EllipticOperatorSpec diagonal(int ell, double mu, double diffusivity = 1.0);
  /// Test hook: explicit symbol; must be positive and strongly elliptic.
  static EllipticOperatorSpec diagonal_custom(
      int ell, std::function<double(const std::vector<int>&)> symbol);
  /// coeffs[(i,j)] with i<=j; symmetric completion implied. shift > 0.
  static EllipticOperatorSpec divergence_form(
      int dim, std::vector<std::pair<std::pair<int, int>, CoefficientFunction>> coeffs,
      double shift);

  Kind kind() const { return kind_; }
  int ell() const { return ell_; }
  int order() const { return 2 * ell_; }
  double mu() const { return mu_; }
  double diffusivity() const { return diffusivity_; }
  double shift() const { return shift_; }
  bool is_diagonal() const { return kind_ == Kind::Diagonal; }

  /// Diagonal symbol lambda(k) > 0.
  double symbol(const std::vector<int>& k) const;

  /// Minimum of lambda(k)/|2 pi k|^{2l} over retained k != 0 (diagonal), or
  /// the minimal pointwise matrix eigenvalue (divergence form); must be > 0.
  double ellipticity_constant(int dim, int cutoff) const;

  /// Shared eigendecomposition of the Galerkin matrix for this (dim, cutoff);
  /// built once, immutable afterwards.
  std::shared_ptr<const GalerkinData> galerkin(int dim, int cutoff) const;

 private:
  EllipticOperatorSpec() = default;
  Kind kind_ = Kind::Diagonal;
  int ell_ = 1;
  double mu_ = 1.0;
  double diffusivity_ = 1.0;
  std::function<double(const std::vector<int>&)> custom_symbol_;
  // divergence form
  int dim_ = 1;
  std::vector<std::vector<CoefficientFunction>> a_coeff_;  // dim x dim, symmetric
  double shift_ = 0.0;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// Real orthonormal trigonometric basis metadata + dense matrix of the
/// generator A (symmetric, all eigenvalues strictly negative).
struct GalerkinMatrix {
  std::vector<std::string> basis_labels;
  std::vector<std::vector<double>> matrix;
  double symmetry_defect = 0.0;
  double max_eigenvalue = 0.0;
};

/// u -> S(t)u = e^{tA}u.  Diagonal: per-mode exp(-t lambda(k)); divergence
/// form: eigendecomposition exponential.  S(0) is the identity.
SpectralField apply_semigroup(const EllipticOperatorSpec& op, double t,
                              const SpectralField& u);

/// u -> (-A)^delta u; any real delta.
SpectralField apply_fractional_power(const EllipticOperatorSpec& op, double delta,
                                     const SpectralField& u);

/// ||(-A)^delta u||_{L^p}; diagonal operators only.
double fractional_sobolev_norm(const SpectralField& u, double delta, double p,
                               const EllipticOperatorSpec& op);

/// Exact L2 operator norm sup_k lambda^delta e^{-t lambda} over retained
/// modes, against the analytic envelope (delta/e)^delta t^(-delta).
SmoothingCheck smoothing_bound_check(const EllipticOperatorSpec& op, double delta,
                                     double t, int dim, int cutoff);

/// phi1 drift weight: (-A)^{-1}(I - S(dt)) u, the exact step integral of the
/// semigroup against piecewise-constant forcing.
SpectralField apply_phi1(const EllipticOperatorSpec& op, double dt,
                         const SpectralField& u);

using DerivativeTerm = std::pair<double, MultiIndex>;  // (a_alpha, alpha)

/// (-A)^{-delta} sum_alpha a_alpha D^alpha z_alpha.
SpectralField b_operator(const EllipticOperatorSpec& op, double delta,
                         const std::vector<DerivativeTerm>& terms,
                         const std::vector<SpectralField>& z);

/// Empirical sup over randomized z of ||B z||_p / ||z||_{L^p(R^gamma)}.
double b_operator_norm_probe(const EllipticOperatorSpec& op, double delta,
                             const std::vector<DerivativeTerm>& terms, double p,
                             int trials, int dim, int cutoff,
                             std::uint64_t seed = 2024);

/// Per-mode multiplier bound sum_alpha |a_alpha| sup_k |(2 pi i k)^alpha| /
/// lambda(k)^delta; exact L2 bound for single-term B on diagonal operators.
double b_operator_l2_bound(const EllipticOperatorSpec& op, double delta,
                           const std::vector<DerivativeTerm>& terms, int dim,
                           int cutoff);

/// Dense Galerkin matrix export (debugging / JSON).
GalerkinMatrix galerkin_matrix(const EllipticOperatorSpec& op, int dim, int cutoff);

}  // namespace spde
