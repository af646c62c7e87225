#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace lfpp {

// splitmix64 finalizer; used both as a bit mixer and to derive replica seeds.
inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic per-replica seed stream: replica i of a run with a given
// master seed always sees the same seed, independent of scheduling.
inline uint64_t replica_seed(uint64_t master_seed, uint64_t replica_index) {
  return splitmix64(master_seed + 0x9e3779b97f4a7c15ull * (replica_index + 1));
}

// Gaussian source with an explicitly pinned algorithm (Box-Muller on top of
// mt19937_64) so streams do not depend on the standard library's
// distribution implementations.
class gaussian_rng {
public:
  explicit gaussian_rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform01() {
    // 53-bit mantissa uniform in (0,1]; never returns 0 so log() is safe.
    return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform01();
    double v = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u));
    double angle = 6.283185307179586476925286766559 * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  uint64_t next_u64() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lfpp
