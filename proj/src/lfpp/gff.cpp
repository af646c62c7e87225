#include "lfpp/gff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <list>
#include <memory>
#include <mutex>

#include "lfpp/fft.hpp"
#include "lfpp/rng.hpp"

namespace lfpp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

namespace {

// Quadrature taps of circle_average(f, f.center(), 1.0) as a dense vector:
// the linear functional l with l . values = h_1(center). Mirrors value_at's
// bilinear interpolation exactly.
std::vector<double> center_circle_taps(int n, double spacing) {
  std::vector<double> taps(static_cast<size_t>(n) * n, 0.0);
  const double half = 0.5 * (n - 1) * spacing;
  const int m = circle_sample_count(1.0, spacing);
  const double w = 1.0 / m;
  for (int q = 0; q < m; ++q) {
    double theta = kTwoPi * q / m;
    double gx = (half + std::cos(theta)) / spacing;
    double gy = (half + std::sin(theta)) / spacing;
    int j0 = std::min(n - 2, std::max(0, static_cast<int>(std::floor(gx))));
    int i0 = std::min(n - 2, std::max(0, static_cast<int>(std::floor(gy))));
    double fx = gx - j0, fy = gy - i0;
    taps[static_cast<size_t>(i0) * n + j0] += w * (1.0 - fy) * (1.0 - fx);
    taps[static_cast<size_t>(i0) * n + j0 + 1] += w * (1.0 - fy) * fx;
    taps[static_cast<size_t>(i0 + 1) * n + j0] += w * fy * (1.0 - fx);
    taps[static_cast<size_t>(i0 + 1) * n + j0 + 1] += w * fy * fx;
  }
  return taps;
}

struct pin_key {
  int n;
  uint64_t spacing_bits;
  bool operator==(const pin_key&) const = default;
};

std::mutex pin_mutex;
std::list<std::pair<pin_key, std::shared_ptr<std::vector<double>>>> pin_cache;

// Normalization profile kappa = C l / (l . C l) for the synthesis covariance
// C and the circle-average functional l. Subtracting kappa * h_1(center)
// pins the radius-1 circle average at the center to 0 (the conditional-law
// correction) while leaving the sample mean at 0, because kappa has no zero
// Fourier mode. A constant shift could do only one of the two.
std::shared_ptr<std::vector<double>> pin_profile(int n, double spacing) {
  pin_key key{n, std::bit_cast<uint64_t>(spacing)};
  {
    std::lock_guard<std::mutex> lock(pin_mutex);
    for (auto it = pin_cache.begin(); it != pin_cache.end(); ++it) {
      if (it->first == key) {
        pin_cache.splice(pin_cache.begin(), pin_cache, it);
        return pin_cache.front().second;
      }
    }
  }

  std::vector<double> taps = center_circle_taps(n, spacing);
  std::vector<std::complex<double>> spec(spectrum_size(n));
  fft_r2c_2d(n, taps.data(), spec.data());
  const int half = n / 2;
  const double base = 1.0 / (static_cast<double>(n) * std::sqrt(kTwoPi));
  size_t idx = 0;
  for (int row = 0; row < n; ++row) {
    int my = row <= half ? row : row - n;
    for (int col = 0; col <= half; ++col, ++idx) {
      double m2 = static_cast<double>(my) * my + static_cast<double>(col) * col;
      spec[idx] *= (m2 == 0.0) ? 0.0 : base * base / m2;
    }
  }
  auto kappa = std::make_shared<std::vector<double>>(static_cast<size_t>(n) * n);
  fft_c2r_2d(n, spec.data(), kappa->data());
  double denom = 0.0;
  for (size_t q = 0; q < taps.size(); ++q) denom += taps[q] * (*kappa)[q];
  require(denom > 0.0, errc::internal, "sample_gff: degenerate normalization profile");
  for (auto& v : *kappa) v /= denom;

  std::lock_guard<std::mutex> lock(pin_mutex);
  pin_cache.emplace_front(key, kappa);
  if (pin_cache.size() > 4) pin_cache.pop_back();
  return kappa;
}

}  // namespace

grid_field sample_gff(int n, double L, uint64_t seed) {
  require(is_pow2(n) && n >= 64, errc::config, "sample_gff: n must be a power of two >= 64");
  require(L > 0.0, errc::config, "sample_gff: L must be positive");
  double spacing = L / (n - 1);
  require(L >= 2.0 + 8.0 * spacing, errc::config,
          "sample_gff: domain too small for the radius-1 normalization circle");

  grid_field out(n, spacing, {0.0, 0.0}, field_kind::gff);

  // White noise, filtered in Fourier space. With unnormalized transforms the
  // per-mode amplitude 1/(n*sqrt(2*pi)*|m|) yields mode variance
  // 1/(2*pi*|m|^2), i.e. the scale-free log-correlated spectrum.
  std::vector<double> noise(static_cast<size_t>(n) * n);
  gaussian_rng rng(seed);
  for (auto& v : noise) v = rng.normal();

  std::vector<std::complex<double>> spec(spectrum_size(n));
  fft_r2c_2d(n, noise.data(), spec.data());

  const int half = n / 2;
  const double base = 1.0 / (static_cast<double>(n) * std::sqrt(kTwoPi));
  size_t idx = 0;
  for (int row = 0; row < n; ++row) {
    int my = row <= half ? row : row - n;
    for (int col = 0; col <= half; ++col, ++idx) {
      double m2 = static_cast<double>(my) * my + static_cast<double>(col) * col;
      spec[idx] *= (m2 == 0.0) ? 0.0 : base / std::sqrt(m2);
    }
  }

  fft_c2r_2d(n, spec.data(), out.values().data());

  auto kappa = pin_profile(n, spacing);
  double a1 = circle_average(out, out.center(), 1.0).value;
  auto& vals = out.values();
  for (size_t q = 0; q < vals.size(); ++q) vals[q] -= (*kappa)[q] * a1;
  return out;
}

int circle_sample_count(double r, double spacing) {
  double arc = kTwoPi * r / spacing;
  int m = static_cast<int>(std::ceil(arc));
  return std::max(64, m);
}

circle_average_result circle_average(const grid_field& f, vec2 z, double r) {
  require(r >= f.spacing(), errc::resolution, "circle_average: radius below lattice spacing");
  require(f.contains(z.x - r, z.y - r) && f.contains(z.x + r, z.y + r), errc::domain,
          "circle_average: circle leaves the sampled domain");
  int m = circle_sample_count(r, f.spacing());
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    double theta = kTwoPi * j / m;
    sum += f.value_at(z.x + r * std::cos(theta), z.y + r * std::sin(theta));
  }
  circle_average_result res;
  res.value = sum / m;
  res.samples = m;
  return res;
}

std::vector<double> circle_average_all(const grid_field& f, double r) {
  require(r >= f.spacing(), errc::resolution, "circle_average_all: radius below lattice spacing");
  const int n = f.n();
  require(2.0 * r < n * f.spacing(), errc::domain,
          "circle_average_all: radius exceeds half the torus period");
  int m = circle_sample_count(r, f.spacing());

  // The batch average is a torus convolution: each quadrature node
  // contributes its four bilinear taps to a sparse kernel.
  std::vector<double> kernel(static_cast<size_t>(n) * n, 0.0);
  const double w = 1.0 / m;
  auto put = [&](int di, int dj, double weight) {
    int i = ((-di) % n + n) % n;
    int j = ((-dj) % n + n) % n;
    kernel[static_cast<size_t>(i) * n + j] += weight;
  };
  for (int q = 0; q < m; ++q) {
    double theta = kTwoPi * q / m;
    double gx = r * std::cos(theta) / f.spacing();
    double gy = r * std::sin(theta) / f.spacing();
    int bx = static_cast<int>(std::floor(gx));
    int by = static_cast<int>(std::floor(gy));
    double fx = gx - bx;
    double fy = gy - by;
    put(by, bx, w * (1.0 - fy) * (1.0 - fx));
    put(by, bx + 1, w * (1.0 - fy) * fx);
    put(by + 1, bx, w * fy * (1.0 - fx));
    put(by + 1, bx + 1, w * fy * fx);
  }

  std::vector<std::complex<double>> fs(spectrum_size(n)), ks(spectrum_size(n));
  fft_r2c_2d(n, f.values().data(), fs.data());
  fft_r2c_2d(n, kernel.data(), ks.data());
  const double inv = 1.0 / (static_cast<double>(n) * n);
  for (size_t i = 0; i < fs.size(); ++i) fs[i] *= ks[i] * inv;
  std::vector<double> outv(static_cast<size_t>(n) * n);
  fft_c2r_2d(n, fs.data(), outv.data());
  return outv;
}

namespace {

struct kernel_key {
  int n;
  uint64_t spacing_bits;
  uint64_t eps_bits;
  bool operator==(const kernel_key&) const = default;
};

// Tiny LRU for mollifier spectra; a sweep over replicas reuses one entry.
std::mutex kernel_mutex;
std::list<std::pair<kernel_key, std::shared_ptr<std::vector<std::complex<double>>>>> kernel_cache;

std::shared_ptr<std::vector<std::complex<double>>> mollifier_spectrum(int n, double spacing,
                                                                      double eps) {
  kernel_key key{n, std::bit_cast<uint64_t>(spacing), std::bit_cast<uint64_t>(eps)};
  {
    std::lock_guard<std::mutex> lock(kernel_mutex);
    for (auto it = kernel_cache.begin(); it != kernel_cache.end(); ++it) {
      if (it->first == key) {
        kernel_cache.splice(kernel_cache.begin(), kernel_cache, it);
        return kernel_cache.front().second;
      }
    }
  }

  std::vector<double> kernel(static_cast<size_t>(n) * n, 0.0);
  const double cutoff = 6.0 * eps;
  const double cutoff2 = cutoff * cutoff;
  const double inv_eps2 = 1.0 / (eps * eps);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    int di = i <= n / 2 ? i : i - n;  // wrapped torus displacement
    double dy = di * spacing;
    for (int j = 0; j < n; ++j) {
      int dj = j <= n / 2 ? j : j - n;
      double dx = dj * spacing;
      double d2 = dx * dx + dy * dy;
      if (d2 > cutoff2) continue;
      double v = std::exp(-d2 * inv_eps2);
      kernel[static_cast<size_t>(i) * n + j] = v;
      total += v;
    }
  }
  const double inv_total = 1.0 / total;
  for (auto& v : kernel) v *= inv_total;

  auto spec = std::make_shared<std::vector<std::complex<double>>>(spectrum_size(n));
  fft_r2c_2d(n, kernel.data(), spec->data());

  std::lock_guard<std::mutex> lock(kernel_mutex);
  kernel_cache.emplace_front(key, spec);
  if (kernel_cache.size() > 4) kernel_cache.pop_back();
  return spec;
}

}  // namespace

grid_field mollify(const grid_field& f, double eps) {
  require(eps >= 2.0 * f.spacing(), errc::resolution,
          "mollify: eps must be at least twice the lattice spacing");
  const int n = f.n();
  auto kspec = mollifier_spectrum(n, f.spacing(), eps);

  std::vector<std::complex<double>> fs(spectrum_size(n));
  fft_r2c_2d(n, f.values().data(), fs.data());
  const auto& ks = *kspec;
  const double inv = 1.0 / (static_cast<double>(n) * n);
  for (size_t i = 0; i < fs.size(); ++i) fs[i] *= ks[i] * inv;

  grid_field out(n, f.spacing(), f.origin(), field_kind::mollified);
  fft_c2r_2d(n, fs.data(), out.values().data());
  out.set_mollification_eps(eps);
  return out;
}

}  // namespace lfpp
