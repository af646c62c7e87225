#pragma once
#include <complex>
#include <vector>

namespace lfpp {

// Thin, thread-safe wrapper around FFTW's 2d real transforms.
//
// Plans are created with FFTW_ESTIMATE (deterministic algorithm choice, so a
// given build produces bit-identical transforms run to run) and cached per
// size under a mutex; execution uses the reentrant new-array interface.
// Transforms are unnormalized: c2r(r2c(x)) == n*n * x.

// out has n*(n/2+1) elements (row-major, half spectrum).
void fft_r2c_2d(int n, const double* in, std::complex<double>* out);

// in is clobbered (FFTW c2r semantics); out has n*n elements.
void fft_c2r_2d(int n, std::complex<double>* in, double* out);

inline size_t spectrum_size(int n) {
  return static_cast<size_t>(n) * (n / 2 + 1);
}

}  // namespace lfpp
