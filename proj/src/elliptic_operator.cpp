#include "spde/elliptic_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "spde/rng.hpp"

namespace spde {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

SpectralField coefficient_field(const CoefficientFunction& fn, int dim, int cutoff) {
  SpectralField f(dim, cutoff);
  std::vector<int> k0(dim, 0);
  f.set(k0, fn.constant);
  for (const auto& h : fn.harmonics) {
    if (static_cast<int>(h.wavevector.size()) != dim)
      throw std::invalid_argument("CoefficientFunction: harmonic dimension mismatch");
    std::vector<int> k = h.wavevector;
    std::vector<int> mk = k;
    for (auto& v : mk) v = -v;
    // a cos(2 pi k.x + phi) = (a/2) e^{i phi} e_k + (a/2) e^{-i phi} e_{-k}
    f.set(k, f.at(k) + 0.5 * h.amplitude * std::polar(1.0, h.phase));
    f.set(mk, f.at(mk) + 0.5 * h.amplitude * std::polar(1.0, -h.phase));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Galerkin realization for divergence-form operators.

namespace {

struct BasisFn {
  int type;  // 0 constant, 1 cos, 2 sin
  std::vector<int> k;
};

bool lexicographically_positive(const std::vector<int>& k) {
  for (int v : k) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return false;
}

}  // namespace

class GalerkinData {
 public:
  int dim = 1;
  int cutoff = 0;
  std::vector<BasisFn> basis;
  Eigen::MatrixXd eigvecs;         // columns: eigenvectors of -A (real basis)
  Eigen::VectorXd omegas;          // eigenvalues of -A, strictly positive
  double symmetry_defect = 0.0;
  Eigen::MatrixXd generator;       // matrix of A, symmetric negative definite

  Eigen::VectorXd to_coords(const SpectralField& u) const {
    Eigen::VectorXd v(basis.size());
    const double sqrt2 = std::numbers::sqrt2;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& fn = basis[b];
      if (fn.type == 0) {
        v[b] = u.at(fn.k).real();
      } else if (fn.type == 1) {
        v[b] = sqrt2 * u.at(fn.k).real();
      } else {
        v[b] = -sqrt2 * u.at(fn.k).imag();
      }
    }
    return v;
  }

  SpectralField from_coords(const Eigen::VectorXd& v) const {
    SpectralField u(dim, cutoff);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& fn = basis[b];
      std::vector<int> mk = fn.k;
      for (auto& c : mk) c = -c;
      if (fn.type == 0) {
        u.set(fn.k, u.at(fn.k) + v[b]);
      } else if (fn.type == 1) {
        u.set(fn.k, u.at(fn.k) + std::complex<double>(v[b] * inv_sqrt2, 0.0));
        u.set(mk, u.at(mk) + std::complex<double>(v[b] * inv_sqrt2, 0.0));
      } else {
        u.set(fn.k, u.at(fn.k) + std::complex<double>(0.0, -v[b] * inv_sqrt2));
        u.set(mk, u.at(mk) + std::complex<double>(0.0, v[b] * inv_sqrt2));
      }
    }
    return u;
  }

  /// Apply f(omega) spectrally, omega the eigenvalues of -A.
  SpectralField apply(const SpectralField& u,
                      const std::function<double(double)>& f) const {
    Eigen::VectorXd c = eigvecs.transpose() * to_coords(u);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= f(omegas[i]);
    return from_coords(eigvecs * c);
  }
};

struct EllipticOperatorSpec::Cache {
  std::mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const GalerkinData>> data;
};

EllipticOperatorSpec EllipticOperatorSpec::diagonal(int ell, double mu,
                                                    double diffusivity) {
  if (ell < 1) throw std::invalid_argument("operator: ell must be >= 1");
  if (mu <= 0.0) throw std::invalid_argument("operator: mu must be > 0");
  if (diffusivity <= 0.0) throw std::invalid_argument("operator: diffusivity must be > 0");
  EllipticOperatorSpec op;
  op.kind_ = Kind::Diagonal;
  op.ell_ = ell;
  op.mu_ = mu;
  op.diffusivity_ = diffusivity;
  op.cache_ = std::make_shared<Cache>();
  return op;
}

EllipticOperatorSpec EllipticOperatorSpec::diagonal_custom(
    int ell, std::function<double(const std::vector<int>&)> symbol) {
  EllipticOperatorSpec op;
  op.kind_ = Kind::Diagonal;
  op.ell_ = ell;
  op.custom_symbol_ = std::move(symbol);
  op.cache_ = std::make_shared<Cache>();
  return op;
}

EllipticOperatorSpec EllipticOperatorSpec::divergence_form(
    int dim, std::vector<std::pair<std::pair<int, int>, CoefficientFunction>> coeffs,
    double shift) {
  if (shift <= 0.0)
    throw std::invalid_argument("operator: divergence form needs shift c > 0");
  EllipticOperatorSpec op;
  op.kind_ = Kind::DivergenceForm;
  op.ell_ = 1;
  op.dim_ = dim;
  op.shift_ = shift;
  op.a_coeff_.assign(dim, std::vector<CoefficientFunction>(dim));
  for (auto& [ij, fn] : coeffs) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= dim || j >= dim)
      throw std::invalid_argument("operator: coefficient index out of range");
    op.a_coeff_[i][j] = fn;
    op.a_coeff_[j][i] = fn;
  }

  // Uniform ellipticity of the pointwise matrix, probed on a dense grid.
  const int probe = 64;
  std::vector<double> x(dim, 0.0);
  auto min_eig = [&](const std::vector<double>& pt) {
    if (dim == 1) return op.a_coeff_[0][0].eval(pt);
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = op.a_coeff_[i][j].eval(pt);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues()[0];
  };
  double worst = std::numeric_limits<double>::infinity();
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= probe;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int a = dim - 1; a >= 0; --a) {
      x[a] = static_cast<double>(rem % probe) / probe;
      rem /= probe;
    }
    worst = std::min(worst, min_eig(x));
  }
  if (!(worst > 0.0))
    throw std::invalid_argument("operator: coefficients violate uniform ellipticity");
  op.diffusivity_ = worst;
  op.cache_ = std::make_shared<Cache>();
  return op;
}

double EllipticOperatorSpec::symbol(const std::vector<int>& k) const {
  if (kind_ != Kind::Diagonal)
    throw std::logic_error("operator: symbol undefined for divergence form");
  if (custom_symbol_) {
    double v = custom_symbol_(k);
    if (!(v > 0.0)) throw std::runtime_error("operator: custom symbol must be positive");
    return v;
  }
  double k2 = 0.0;
  for (int v : k) k2 += static_cast<double>(v) * v;
  return std::pow(diffusivity_ * kTwoPi * kTwoPi * k2 + mu_, ell_);
}

double EllipticOperatorSpec::ellipticity_constant(int dim, int cutoff) const {
  if (kind_ == Kind::DivergenceForm) return diffusivity_;
  double worst = std::numeric_limits<double>::infinity();
  SpectralField probe(dim, cutoff);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    auto k = probe.wavevector_of(i);
    double k2 = 0.0;
    for (int v : k) k2 += static_cast<double>(v) * v;
    if (k2 == 0.0) continue;
    worst = std::min(worst, symbol(k) / std::pow(kTwoPi * kTwoPi * k2, ell_));
  }
  return worst;
}

std::shared_ptr<const GalerkinData> EllipticOperatorSpec::galerkin(int dim,
                                                                   int cutoff) const {
  if (kind_ != Kind::DivergenceForm)
    throw std::logic_error("operator: Galerkin data is for divergence form");
  if (dim != dim_) throw std::invalid_argument("operator: dimension mismatch");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto key = std::make_pair(dim, cutoff);
  auto it = cache_->data.find(key);
  if (it != cache_->data.end()) return it->second;

  auto data = std::make_shared<GalerkinData>();
  data->dim = dim;
  data->cutoff = cutoff;

  SpectralField lattice(dim, cutoff);
  data->basis.push_back({0, std::vector<int>(dim, 0)});
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    auto k = lattice.wavevector_of(i);
    if (!lexicographically_positive(k)) continue;
    data->basis.push_back({1, k});
    data->basis.push_back({2, k});
  }
  const std::size_t nb = data->basis.size();

  // Fourier coefficients of the coefficient functions, up to bandwidth 2K.
  const int band = 2 * cutoff;
  std::vector<std::vector<SpectralField>> ahat(dim, std::vector<SpectralField>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (a_coeff_[i][j].max_wavenumber() > band)
        throw std::invalid_argument("operator: coefficient bandwidth exceeds 2K");
      ahat[i][j] = coefficient_field(a_coeff_[i][j], dim, std::max(band, 1));
    }

  // <e_k, (-A) e_k'> on the complex lattice.
  const std::size_t nl = lattice.size();
  Eigen::MatrixXcd pos(nl, nl);
  for (std::size_t r = 0; r < nl; ++r) {
    auto k = lattice.wavevector_of(r);
    for (std::size_t c = 0; c < nl; ++c) {
      auto kp = lattice.wavevector_of(c);
      std::vector<int> diff(dim);
      for (int a = 0; a < dim; ++a) diff[a] = k[a] - kp[a];
      std::complex<double> acc = 0.0;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          acc += static_cast<double>(k[i]) * static_cast<double>(kp[j]) *
                 ahat[i][j].at(diff);
      acc *= kTwoPi * kTwoPi;
      if (r == c) acc += shift_;
      pos(r, c) = acc;
    }
  }

  // Real-basis congruence through the sparse change of basis.
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  auto column = [&](const BasisFn& fn) {
    std::vector<std::pair<std::size_t, std::complex<double>>> entries;
    if (fn.type == 0) {
      entries.emplace_back(lattice.index_of(fn.k), 1.0);
    } else {
      std::vector<int> mk = fn.k;
      for (auto& v : mk) v = -v;
      if (fn.type == 1) {
        entries.emplace_back(lattice.index_of(fn.k), inv_sqrt2);
        entries.emplace_back(lattice.index_of(mk), inv_sqrt2);
      } else {
        entries.emplace_back(lattice.index_of(fn.k), std::complex<double>(0, -inv_sqrt2));
        entries.emplace_back(lattice.index_of(mk), std::complex<double>(0, inv_sqrt2));
      }
    }
    return entries;
  };

  Eigen::MatrixXd real_pos(nb, nb);
  for (std::size_t a = 0; a < nb; ++a) {
    auto ca = column(data->basis[a]);
    for (std::size_t b = 0; b < nb; ++b) {
      auto cb = column(data->basis[b]);
      std::complex<double> acc = 0.0;
      for (auto& [rk, va] : ca)
        for (auto& [ck, vb] : cb) acc += std::conj(va) * vb * pos(rk, ck);
      real_pos(a, b) = acc.real();
    }
  }

  data->symmetry_defect = (real_pos - real_pos.transpose()).cwiseAbs().maxCoeff();
  if (data->symmetry_defect > 1e-10)
    throw std::runtime_error("operator: Galerkin matrix asymmetric beyond tolerance");
  Eigen::MatrixXd sym = 0.5 * (real_pos + real_pos.transpose());
  data->generator = -sym;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("operator: eigendecomposition failed");
  data->omegas = es.eigenvalues();
  data->eigvecs = es.eigenvectors();
  if (data->omegas[0] <= 0.0)
    throw std::runtime_error("operator: Galerkin matrix of -A not positive definite");

  auto shared = std::shared_ptr<const GalerkinData>(data);
  cache_->data.emplace(key, shared);
  return shared;
}

// ---------------------------------------------------------------------------

namespace {

SpectralField apply_diagonal(const EllipticOperatorSpec& op, const SpectralField& u,
                             const std::function<double(double)>& f) {
  SpectralField v = u;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= f(op.symbol(v.wavevector_of(i)));
  return v;
}

SpectralField apply_multiplier(const EllipticOperatorSpec& op, const SpectralField& u,
                               const std::function<double(double)>& f) {
  if (op.is_diagonal()) return apply_diagonal(op, u, f);
  return op.galerkin(u.dim(), u.cutoff())->apply(u, f);
}

}  // namespace

SpectralField apply_semigroup(const EllipticOperatorSpec& op, double t,
                              const SpectralField& u) {
  if (t < 0.0) throw std::invalid_argument("apply_semigroup: negative time");
  if (t == 0.0) return u;
  return apply_multiplier(op, u, [t](double w) { return std::exp(-t * w); });
}

SpectralField apply_fractional_power(const EllipticOperatorSpec& op, double delta,
                                     const SpectralField& u) {
  if (delta == 0.0) return u;
  return apply_multiplier(op, u, [delta](double w) { return std::pow(w, delta); });
}

double fractional_sobolev_norm(const SpectralField& u, double delta, double p,
                               const EllipticOperatorSpec& op) {
  if (!op.is_diagonal())
    throw std::invalid_argument(
        "fractional_sobolev_norm: diagonal operator required");
  return lp_norm(apply_fractional_power(op, delta, u), p);
}

SmoothingCheck smoothing_bound_check(const EllipticOperatorSpec& op, double delta,
                                     double t, int dim, int cutoff) {
  if (t <= 0.0) throw std::invalid_argument("smoothing_bound_check: t must be > 0");
  if (!op.is_diagonal())
    throw std::invalid_argument("smoothing_bound_check: diagonal operator required");
  SmoothingCheck out;
  SpectralField lattice(dim, cutoff);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    double lam = op.symbol(lattice.wavevector_of(i));
    out.measured = std::max(out.measured, std::pow(lam, delta) * std::exp(-t * lam));
  }
  out.bound = delta == 0.0
                  ? 1.0
                  : std::pow(delta / std::numbers::e, delta) * std::pow(t, -delta);
  return out;
}

SpectralField apply_phi1(const EllipticOperatorSpec& op, double dt,
                         const SpectralField& u) {
  if (dt < 0.0) throw std::invalid_argument("apply_phi1: negative step");
  return apply_multiplier(
      op, u, [dt](double w) { return -std::expm1(-dt * w) / w; });
}

SpectralField b_operator(const EllipticOperatorSpec& op, double delta,
                         const std::vector<DerivativeTerm>& terms,
                         const std::vector<SpectralField>& z) {
  if (terms.size() != z.size())
    throw std::invalid_argument("b_operator: term/field count mismatch");
  if (terms.empty()) return SpectralField();
  SpectralField acc(z[0].dim(), z[0].cutoff());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].second.order() > op.order() - 1)
      throw std::invalid_argument("b_operator: |alpha| must be <= 2l-1");
    acc += terms[i].first * derivative(z[i], terms[i].second);
  }
  return apply_fractional_power(op, -delta, acc);
}

double b_operator_norm_probe(const EllipticOperatorSpec& op, double delta,
                             const std::vector<DerivativeTerm>& terms, double p,
                             int trials, int dim, int cutoff, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("b_operator_norm_probe: trials >= 1");
  const std::size_t gamma = terms.size();
  double best = 0.0;
  SpectralField proto(dim, cutoff);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<SpectralField> z;
    std::vector<GridField> grids;
    for (std::size_t c = 0; c < gamma; ++c) {
      SpectralField f(dim, cutoff);
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t id0 = (static_cast<std::uint64_t>(trial) << 20) | c;
        double re = counter_gaussian(seed, RngStream::kProbe, id0, 2 * i);
        double im = counter_gaussian(seed, RngStream::kProbe, id0, 2 * i + 1);
        f[i] = std::complex<double>(re, im);
      }
      f.hermitian_symmetrize();
      z.push_back(f);
      grids.push_back(to_grid(f, 2));
    }
    // || z ||_{L^p(R^gamma)} with the Euclidean norm inside.
    double denom_acc = 0.0;
    const std::size_t npts = grids[0].points();
    for (std::size_t x = 0; x < npts; ++x) {
      double s2 = 0.0;
      for (auto& g : grids) s2 += g.values[x] * g.values[x];
      denom_acc += std::pow(s2, p / 2.0);
    }
    double denom = std::pow(denom_acc / static_cast<double>(npts), 1.0 / p);
    if (denom == 0.0) continue;
    best = std::max(best, lp_norm(b_operator(op, delta, terms, z), p) / denom);
  }
  return best;
}

double b_operator_l2_bound(const EllipticOperatorSpec& op, double delta,
                           const std::vector<DerivativeTerm>& terms, int dim,
                           int cutoff) {
  SpectralField lattice(dim, cutoff);
  double total = 0.0;
  for (const auto& [a, alpha] : terms) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      auto k = lattice.wavevector_of(i);
      double mag = 1.0;
      for (int ax = 0; ax < dim; ++ax)
        mag *= std::pow(std::abs(kTwoPi * k[ax]), alpha[ax]);
      worst = std::max(worst, mag / std::pow(op.symbol(k), delta));
    }
    total += std::abs(a) * worst;
  }
  return total;
}

GalerkinMatrix galerkin_matrix(const EllipticOperatorSpec& op, int dim, int cutoff) {
  auto data = op.galerkin(dim, cutoff);
  GalerkinMatrix out;
  for (const auto& fn : data->basis) {
    std::string label = fn.type == 0 ? "1" : (fn.type == 1 ? "cos" : "sin");
    if (fn.type != 0) {
      label += "(";
      for (std::size_t a = 0; a < fn.k.size(); ++a)
        label += (a ? "," : "") + std::to_string(fn.k[a]);
      label += ")";
    }
    out.basis_labels.push_back(label);
  }
  const auto& g = data->generator;
  out.matrix.assign(g.rows(), std::vector<double>(g.cols()));
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) out.matrix[r][c] = g(r, c);
  out.symmetry_defect = data->symmetry_defect;
  out.max_eigenvalue = -data->omegas[0];
  return out;
}

}  // namespace spde
