#include "spde/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace spde::detail {
namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(int dim, int n, int sign) {
  // Keyed cache; FFTW planning is not thread-safe, execution with explicit
  // arrays is.  FFTW_UNALIGNED lets one plan serve arbitrary buffers.
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(dim, n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
  std::vector<std::complex<double>> scratch(total);
  std::vector<int> dims(dim, n);
  fftw_plan p = fftw_plan_dft(
      dim, dims.data(), reinterpret_cast<fftw_complex*>(scratch.data()),
      reinterpret_cast<fftw_complex*>(scratch.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw planning failed");
  cache.emplace(key, p);
  return p;
}

}  // namespace

void dft_inplace(int dim, int n, std::complex<double>* data, int sign) {
  if (dim < 1 || n < 1) throw std::invalid_argument("dft_inplace: bad shape");
  fftw_plan p = plan_for(dim, n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace spde::detail
