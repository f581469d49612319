#pragma once

#include <complex>

namespace spde::detail {

// In-place c2c DFT on a row-major dim-cube of side n. sign -1 forward
// (unnormalized), +1 backward. Thread-safe; plans are cached per shape.
void dft_inplace(int dim, int n, std::complex<double>* data, int sign);

}  // namespace spde::detail
