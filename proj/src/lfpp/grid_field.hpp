#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lfpp/errors.hpp"

namespace lfpp {

enum class field_kind : uint8_t { gff = 0, mollified = 1, deterministic = 2 };

struct vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Inclusive index rectangle [i0,i1] x [j0,j1] (rows x cols).
struct index_rect {
  int i0 = 0, i1 = -1, j0 = 0, j1 = -1;
  bool empty() const { return i1 < i0 || j1 < j0; }
  long long count() const {
    return empty() ? 0 : static_cast<long long>(i1 - i0 + 1) * (j1 - j0 + 1);
  }
};

// Scalar field sampled on an n x n lattice. Vertex (i,j) sits at physical
// position origin + (j*spacing, i*spacing); the sampled square has side
// L = (n-1)*spacing. Synthesis treats the lattice as an n-periodic torus of
// period n*spacing; measurements are restricted to a central window so the
// periodic seam never matters.
class grid_field {
public:
  grid_field() = default;
  grid_field(int n, double spacing, vec2 origin, field_kind kind)
      : n_(n), spacing_(spacing), origin_(origin), kind_(kind), values_(static_cast<size_t>(n) * n, 0.0) {
    require(n >= 2, errc::config, "grid_field: n must be >= 2");
    require(spacing > 0.0, errc::config, "grid_field: spacing must be positive");
  }

  int n() const { return n_; }
  double spacing() const { return spacing_; }
  vec2 origin() const { return origin_; }
  field_kind kind() const { return kind_; }
  void set_kind(field_kind k) { kind_ = k; }
  double side_length() const { return (n_ - 1) * spacing_; }
  // Smoothing scale of a mollified field; 0 for raw/deterministic fields.
  double mollification_eps() const { return eps_; }
  void set_mollification_eps(double eps) { eps_ = eps; }

  double& at(int i, int j) { return values_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return values_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  vec2 position(int i, int j) const {
    return {origin_.x + j * spacing_, origin_.y + i * spacing_};
  }
  vec2 center() const {
    double half = 0.5 * side_length();
    return {origin_.x + half, origin_.y + half};
  }
  bool contains(double x, double y) const {
    double L = side_length();
    return x >= origin_.x && x <= origin_.x + L && y >= origin_.y && y <= origin_.y + L;
  }

  // Bilinear interpolation at a physical point; the point must lie in the
  // sampled square.
  double value_at(double x, double y) const;

  // Central measurement window covering `fraction` of the side in each axis.
  index_rect window(double fraction) const;

  static grid_field from_function(int n, double spacing, vec2 origin,
                                  const std::function<double(double, double)>& f);

private:
  int n_ = 0;
  double spacing_ = 0.0;
  vec2 origin_;
  field_kind kind_ = field_kind::deterministic;
  double eps_ = 0.0;
  std::vector<double> values_;
};

// Pointwise sum; fields must share (n, spacing, origin).
grid_field add_fields(const grid_field& a, const grid_field& b);
grid_field scale_field(const grid_field& a, double c);

// Binary snapshot, little-endian:
//   magic "LFPPFLD1" | u32 n | f64 spacing | f64 origin_x | f64 origin_y |
//   u8 kind | n*n f64 values (row-major)
// Round-trips bit-exactly.
void save_field(const grid_field& f, const std::string& path);
grid_field load_field(const std::string& path);

}  // namespace lfpp
