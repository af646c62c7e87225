#include "lfpp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace lfpp {

namespace {

std::mutex plan_mutex;
std::map<int, fftw_plan> r2c_plans;
std::map<int, fftw_plan> c2r_plans;

fftw_plan get_r2c_plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = r2c_plans.find(n);
  if (it != r2c_plans.end()) return it->second;
  std::vector<double> in(static_cast<size_t>(n) * n);
  std::vector<fftw_complex> out(spectrum_size(n));
  fftw_plan p = fftw_plan_dft_r2c_2d(n, n, in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  r2c_plans.emplace(n, p);
  return p;
}

fftw_plan get_c2r_plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = c2r_plans.find(n);
  if (it != c2r_plans.end()) return it->second;
  std::vector<fftw_complex> in(spectrum_size(n));
  std::vector<double> out(static_cast<size_t>(n) * n);
  fftw_plan p = fftw_plan_dft_c2r_2d(n, n, in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  c2r_plans.emplace(n, p);
  return p;
}

}  // namespace

void fft_r2c_2d(int n, const double* in, std::complex<double>* out) {
  fftw_plan p = get_r2c_plan(n);
  // FFTW does not write to the input of an out-of-place r2c transform.
  fftw_execute_dft_r2c(p, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void fft_c2r_2d(int n, std::complex<double>* in, double* out) {
  fftw_plan p = get_c2r_plan(n);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace lfpp
