#pragma once
#include <cstdint>
#include <vector>

#include "lfpp/grid_field.hpp"

namespace lfpp {

// Vertex subset of an n x n lattice. Vertex ids are row-major: id = i*n + j.
class region_mask {
public:
  region_mask() = default;
  region_mask(int n, bool value) : n_(n), bits_(static_cast<size_t>(n) * n, value ? 1 : 0) {}

  static region_mask full(int n) { return region_mask(n, true); }
  static region_mask empty_mask(int n) { return region_mask(n, false); }
  static region_mask from_rect(int n, const index_rect& r);

  int n() const { return n_; }
  bool test(uint32_t v) const { return bits_[v] != 0; }
  bool test(int i, int j) const { return bits_[static_cast<size_t>(i) * n_ + j] != 0; }
  void set(uint32_t v, bool on) { bits_[v] = on ? 1 : 0; }
  void set(int i, int j, bool on) { bits_[static_cast<size_t>(i) * n_ + j] = on ? 1 : 0; }
  size_t count() const;
  size_t size() const { return bits_.size(); }

private:
  int n_ = 0;
  std::vector<uint8_t> bits_;
};

// Per-vertex conformal weights e^{xi * h}. Edge cost between 8-neighbors u,v
// is spacing * |delta| * (w[u]+w[v])/2 with |delta| in {1, sqrt(2)}.
class weight_grid {
public:
  weight_grid() = default;
  weight_grid(int n, double spacing, double value)
      : n_(n), spacing_(spacing), w_(static_cast<size_t>(n) * n, value) {
    require(n >= 2 && spacing > 0.0 && value > 0.0, errc::config, "weight_grid: bad parameters");
  }

  int n() const { return n_; }
  double spacing() const { return spacing_; }
  double xi() const { return xi_; }
  double eps() const { return eps_; }
  vec2 origin() const { return origin_; }
  void set_origin(vec2 o) { origin_ = o; }
  const std::vector<double>& values() const { return w_; }
  std::vector<double>& values() { return w_; }
  double at(uint32_t v) const { return w_[v]; }
  double at(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
  vec2 position(int i, int j) const { return {origin_.x + j * spacing_, origin_.y + i * spacing_}; }
  vec2 position(uint32_t v) const { return position(static_cast<int>(v) / n_, static_cast<int>(v) % n_); }

  friend weight_grid build_weights(const grid_field& mollified, double xi);

private:
  int n_ = 0;
  double spacing_ = 0.0;
  double xi_ = 0.0;
  double eps_ = 0.0;
  vec2 origin_;
  std::vector<double> w_;
};

// Exponential weights from a mollified field. xi must be positive; the
// degenerate xi = 0 case is represented by a constant weight_grid instead.
weight_grid build_weights(const grid_field& mollified, double xi);

}  // namespace lfpp
