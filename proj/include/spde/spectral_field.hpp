#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "spde/multi_index.hpp"

namespace spde {

/// Real values on the uniform torus grid, period 1 per axis, row-major.
/// Quadrature weight is 1/points() (measure normalized to total mass 1).
struct GridField {
  int dim = 1;
  int points_per_axis = 0;
  std::vector<double> values;

  GridField() = default;
  GridField(int dim_, int m) : dim(dim_), points_per_axis(m) {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(m);
    values.assign(n, 0.0);
  }
  std::size_t points() const { return values.size(); }
  /// Coordinate of grid node `j` along `axis` after row-major decoding.
  double coord(std::size_t flat, int axis) const;
  bool all_finite() const;
};

/// Truncated Fourier series of a real field on the torus: coefficients c_k,
/// k in {-K..K}^N, row-major with axis index k+K.  Hermitian symmetry
/// c_{-k} = conj(c_k) is the realness invariant.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(int dim, int cutoff);

  static SpectralField zero(int dim, int cutoff) { return SpectralField(dim, cutoff); }
  static SpectralField constant(int dim, int cutoff, double value);

  int dim() const { return dim_; }
  int cutoff() const { return cutoff_; }
  int modes_per_axis() const { return 2 * cutoff_ + 1; }
  std::size_t size() const { return coef_.size(); }

  std::complex<double>& operator[](std::size_t i) { return coef_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return coef_[i]; }
  const std::vector<std::complex<double>>& coefficients() const { return coef_; }
  std::vector<std::complex<double>>& coefficients() { return coef_; }

  /// Flat index of wavevector k (components in [-K, K]).
  std::size_t index_of(const std::vector<int>& k) const;
  /// Wavevector of flat index, components in [-K, K].
  std::vector<int> wavevector_of(std::size_t flat) const;
  std::complex<double> at(const std::vector<int>& k) const { return coef_[index_of(k)]; }
  void set(const std::vector<int>& k, std::complex<double> v) { coef_[index_of(k)] = v; }

  bool all_finite() const;
  double hermitian_defect() const;  // max |c_k - conj(c_{-k})|
  void hermitian_symmetrize();

  /// Pointwise evaluation of the trigonometric polynomial (direct sum).
  double eval(const std::vector<double>& x) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  int dim_ = 1;
  int cutoff_ = 0;
  std::vector<std::complex<double>> coef_;
};

/// Canonical grid size for cutoff K: even, aliasing-free for modes up to K.
inline int grid_size_for(int cutoff, int oversample = 1) {
  return oversample * (2 * cutoff + 2);
}

/// Synthesize grid values; `oversample` >= 1 enlarges the grid for dealiased
/// pointwise work.
GridField to_grid(const SpectralField& u, int oversample = 1);

/// Coefficients of the trigonometric interpolant of g.  The cutoff defaults
/// to the largest aliasing-free value M/2 - 1.
SpectralField forward_transform(const GridField& g);
SpectralField forward_transform(const GridField& g, int cutoff);

/// Drop (or zero-pad) modes to a new cutoff.
SpectralField truncate(const SpectralField& u, int new_cutoff);

/// Spectral derivative: coefficient k scaled by prod_j (2*pi*i*k_j)^alpha_j.
SpectralField derivative(const SpectralField& u, const MultiIndex& alpha);

/// (integral |u|^p dx)^(1/p) with unit total measure, by uniform-grid
/// quadrature on the doubly-oversampled grid.
double lp_norm(const SpectralField& u, double p);

/// (sum_{|alpha|<=m} lp_norm(D^alpha u, p)^p)^(1/p).
double sobolev_norm(const SpectralField& u, int m, double p);

/// max_x |u(x)| on the oversampled grid.
double sup_norm(const SpectralField& u);

/// FNV-1a over the raw coefficient bytes; trajectory/report bookkeeping.
std::uint64_t content_hash(const SpectralField& u);

}  // namespace spde
