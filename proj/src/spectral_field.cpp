#include "spde/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "spde/detail/fft.hpp"

namespace spde {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t pow_sz(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}
}  // namespace

double GridField::coord(std::size_t flat, int axis) const {
  std::size_t stride = 1;
  for (int a = dim - 1; a > axis; --a) stride *= static_cast<std::size_t>(points_per_axis);
  std::size_t j = (flat / stride) % static_cast<std::size_t>(points_per_axis);
  return static_cast<double>(j) / points_per_axis;
}

bool GridField::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

SpectralField::SpectralField(int dim, int cutoff) : dim_(dim), cutoff_(cutoff) {
  if (dim < 1) throw std::invalid_argument("SpectralField: dim must be >= 1");
  if (cutoff < 0) throw std::invalid_argument("SpectralField: cutoff must be >= 0");
  coef_.assign(pow_sz(2 * cutoff + 1, dim), {0.0, 0.0});
}

SpectralField SpectralField::constant(int dim, int cutoff, double value) {
  SpectralField u(dim, cutoff);
  u.coef_[u.index_of(std::vector<int>(dim, 0))] = value;
  return u;
}

std::size_t SpectralField::index_of(const std::vector<int>& k) const {
  if (static_cast<int>(k.size()) != dim_)
    throw std::invalid_argument("SpectralField: wavevector dimension mismatch");
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    if (k[a] < -cutoff_ || k[a] > cutoff_)
      throw std::out_of_range("SpectralField: wavevector beyond cutoff");
    idx = idx * static_cast<std::size_t>(modes_per_axis()) +
          static_cast<std::size_t>(k[a] + cutoff_);
  }
  return idx;
}

std::vector<int> SpectralField::wavevector_of(std::size_t flat) const {
  std::vector<int> k(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = static_cast<int>(flat % static_cast<std::size_t>(modes_per_axis())) - cutoff_;
    flat /= static_cast<std::size_t>(modes_per_axis());
  }
  return k;
}

bool SpectralField::all_finite() const {
  return std::all_of(coef_.begin(), coef_.end(), [](const std::complex<double>& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    auto k = wavevector_of(i);
    for (int a = 0; a < dim_; ++a) k[a] = -k[a];
    std::complex<double> mirror = coef_[index_of(k)];
    worst = std::max(worst, std::abs(coef_[i] - std::conj(mirror)));
  }
  return worst;
}

void SpectralField::hermitian_symmetrize() {
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    auto k = wavevector_of(i);
    for (int a = 0; a < dim_; ++a) k[a] = -k[a];
    std::size_t j = index_of(k);
    if (j < i) continue;
    std::complex<double> avg = 0.5 * (coef_[i] + std::conj(coef_[j]));
    coef_[i] = avg;
    coef_[j] = std::conj(avg);
  }
}

double SpectralField::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("SpectralField::eval: point dimension mismatch");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    auto k = wavevector_of(i);
    double phase = 0.0;
    for (int a = 0; a < dim_; ++a) phase += k[a] * x[a];
    acc += coef_[i] * std::polar(1.0, kTwoPi * phase);
  }
  return acc.real();
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (o.dim_ != dim_ || o.cutoff_ != cutoff_)
    throw std::invalid_argument("SpectralField: shape mismatch in +=");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (o.dim_ != dim_ || o.cutoff_ != cutoff_)
    throw std::invalid_argument("SpectralField: shape mismatch in -=");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coef_) c *= s;
  return *this;
}

GridField to_grid(const SpectralField& u, int oversample) {
  if (oversample < 1) throw std::invalid_argument("to_grid: oversample must be >= 1");
  const int m = grid_size_for(u.cutoff(), oversample);
  const int dim = u.dim();
  const int k_max = u.cutoff();

  std::vector<std::complex<double>> bins(pow_sz(m, dim), {0.0, 0.0});
  // Place c_k at DFT bin (k mod m) per axis.
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto k = u.wavevector_of(i);
    std::size_t bin = 0;
    for (int a = 0; a < dim; ++a) {
      int b = k[a] >= 0 ? k[a] : k[a] + m;
      bin = bin * static_cast<std::size_t>(m) + static_cast<std::size_t>(b);
    }
    bins[bin] = u[i];
  }
  (void)k_max;
  detail::dft_inplace(dim, m, bins.data(), +1);

  GridField g(dim, m);
  for (std::size_t j = 0; j < bins.size(); ++j) g.values[j] = bins[j].real();
  return g;
}

SpectralField forward_transform(const GridField& g) {
  if (g.points_per_axis < 2 || g.points_per_axis % 2 != 0)
    throw std::invalid_argument("forward_transform: grid size must be even and >= 2");
  return forward_transform(g, g.points_per_axis / 2 - 1);
}

SpectralField forward_transform(const GridField& g, int cutoff) {
  const int m = g.points_per_axis;
  if (cutoff < 0 || 2 * cutoff + 1 > m)
    throw std::invalid_argument("forward_transform: cutoff incompatible with grid");
  std::size_t expect = pow_sz(m, g.dim);
  if (g.values.size() != expect)
    throw std::invalid_argument("forward_transform: value count does not match grid");

  std::vector<std::complex<double>> bins(g.values.begin(), g.values.end());
  detail::dft_inplace(g.dim, m, bins.data(), -1);

  SpectralField u(g.dim, cutoff);
  const double scale = 1.0 / static_cast<double>(expect);
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto k = u.wavevector_of(i);
    std::size_t bin = 0;
    for (int a = 0; a < g.dim; ++a) {
      int b = k[a] >= 0 ? k[a] : k[a] + m;
      bin = bin * static_cast<std::size_t>(m) + static_cast<std::size_t>(b);
    }
    u[i] = bins[bin] * scale;
  }
  u.hermitian_symmetrize();
  return u;
}

SpectralField truncate(const SpectralField& u, int new_cutoff) {
  SpectralField v(u.dim(), new_cutoff);
  const int kk = std::min(new_cutoff, u.cutoff());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto k = v.wavevector_of(i);
    bool inside = true;
    for (int a = 0; a < u.dim(); ++a)
      if (k[a] < -kk || k[a] > kk) { inside = false; break; }
    if (inside) v[i] = u.at(k);
  }
  return v;
}

SpectralField derivative(const SpectralField& u, const MultiIndex& alpha) {
  if (alpha.dim() != u.dim())
    throw std::invalid_argument("derivative: multi-index dimension mismatch");
  SpectralField v = u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto k = v.wavevector_of(i);
    std::complex<double> mult = 1.0;
    for (int a = 0; a < u.dim(); ++a)
      for (int r = 0; r < alpha[a]; ++r) mult *= std::complex<double>(0.0, kTwoPi * k[a]);
    v[i] *= mult;
  }
  return v;
}

double lp_norm(const SpectralField& u, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  GridField g = to_grid(u, 2);
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : g.values) acc += v * v;
  } else {
    for (double v : g.values) acc += std::pow(std::abs(v), p);
  }
  return std::pow(acc / static_cast<double>(g.points()), 1.0 / p);
}

double sobolev_norm(const SpectralField& u, int m, double p) {
  if (m < 0) throw std::invalid_argument("sobolev_norm: m must be >= 0");
  double acc = 0.0;
  for (const MultiIndex& alpha : multi_indices_up_to(u.dim(), m))
    acc += std::pow(lp_norm(derivative(u, alpha), p), p);
  return std::pow(acc, 1.0 / p);
}

double sup_norm(const SpectralField& u) {
  GridField g = to_grid(u, 2);
  double best = 0.0;
  for (double v : g.values) best = std::max(best, std::abs(v));
  return best;
}

std::uint64_t content_hash(const SpectralField& u) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  int dims[2] = {u.dim(), u.cutoff()};
  mix(dims, sizeof(dims));
  mix(u.coefficients().data(), u.size() * sizeof(std::complex<double>));
  return h;
}

std::vector<MultiIndex> multi_indices_up_to(int dim, int m) {
  std::vector<MultiIndex> out;
  for (int order = 0; order <= m; ++order)
    for (auto& a : multi_indices_of_order(dim, order)) out.push_back(a);
  return out;
}

std::vector<MultiIndex> multi_indices_of_order(int dim, int m) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(dim, 0);
  // Enumerate compositions of m into dim parts.
  auto rec = [&](auto&& self, int axis, int rem) -> void {
    if (axis == dim - 1) {
      cur[axis] = rem;
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[axis] = v;
      self(self, axis + 1, rem - v);
    }
  };
  if (dim >= 1) rec(rec, 0, m);
  return out;
}

}  // namespace spde
