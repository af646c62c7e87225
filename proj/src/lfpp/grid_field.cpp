#include "lfpp/grid_field.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace lfpp {

static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

double grid_field::value_at(double x, double y) const {
  require(contains(x, y), errc::domain, "value_at: point outside sampled domain");
  double gx = (x - origin_.x) / spacing_;
  double gy = (y - origin_.y) / spacing_;
  int j0 = static_cast<int>(std::floor(gx));
  int i0 = static_cast<int>(std::floor(gy));
  if (j0 > n_ - 2) j0 = n_ - 2;  // point exactly on the far edge
  if (i0 > n_ - 2) i0 = n_ - 2;
  if (j0 < 0) j0 = 0;
  if (i0 < 0) i0 = 0;
  double fx = gx - j0;
  double fy = gy - i0;
  double v00 = at(i0, j0), v01 = at(i0, j0 + 1);
  double v10 = at(i0 + 1, j0), v11 = at(i0 + 1, j0 + 1);
  return (1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) + fy * ((1.0 - fx) * v10 + fx * v11);
}

index_rect grid_field::window(double fraction) const {
  require(fraction > 0.0 && fraction <= 1.0, errc::config, "window: fraction must be in (0,1]");
  double margin = 0.5 * (1.0 - fraction) * (n_ - 1);
  index_rect r;
  r.i0 = static_cast<int>(std::ceil(margin));
  r.i1 = static_cast<int>(std::floor((n_ - 1) - margin));
  r.j0 = r.i0;
  r.j1 = r.i1;
  require(!r.empty(), errc::resolution, "window: empty at this lattice size");
  return r;
}

grid_field grid_field::from_function(int n, double spacing, vec2 origin,
                                     const std::function<double(double, double)>& f) {
  grid_field out(n, spacing, origin, field_kind::deterministic);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      vec2 p = out.position(i, j);
      out.at(i, j) = f(p.x, p.y);
    }
  return out;
}

static void require_same_grid(const grid_field& a, const grid_field& b, const char* op) {
  require(a.n() == b.n(), errc::config, std::string(op) + ": size mismatch");
  require(a.spacing() == b.spacing(), errc::config, std::string(op) + ": spacing mismatch");
  require(a.origin().x == b.origin().x && a.origin().y == b.origin().y, errc::config,
          std::string(op) + ": origin mismatch");
}

grid_field add_fields(const grid_field& a, const grid_field& b) {
  require_same_grid(a, b, "add_fields");
  grid_field out = a;
  out.set_kind(field_kind::deterministic);
  out.set_mollification_eps(0.0);
  const auto& bv = b.values();
  auto& ov = out.values();
  for (size_t k = 0; k < ov.size(); ++k) ov[k] += bv[k];
  return out;
}

grid_field scale_field(const grid_field& a, double c) {
  grid_field out = a;
  for (auto& v : out.values()) v *= c;
  return out;
}

namespace {

constexpr char kMagic[8] = {'L', 'F', 'P', 'P', 'F', 'L', 'D', '1'};

struct file_closer {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

template <typename T>
void write_raw(std::FILE* f, const T* data, size_t count, const std::string& path) {
  require(std::fwrite(data, sizeof(T), count, f) == count, errc::io,
          "save_field: short write to " + path);
}

template <typename T>
void read_raw(std::FILE* f, T* data, size_t count, const std::string& path) {
  require(std::fread(data, sizeof(T), count, f) == count, errc::io,
          "load_field: truncated file " + path);
}

}  // namespace

void save_field(const grid_field& f, const std::string& path) {
  std::unique_ptr<std::FILE, file_closer> fp(std::fopen(path.c_str(), "wb"));
  require(fp != nullptr, errc::io, "save_field: cannot open " + path);
  write_raw(fp.get(), kMagic, 8, path);
  uint32_t n = static_cast<uint32_t>(f.n());
  write_raw(fp.get(), &n, 1, path);
  double spacing = f.spacing(), ox = f.origin().x, oy = f.origin().y;
  write_raw(fp.get(), &spacing, 1, path);
  write_raw(fp.get(), &ox, 1, path);
  write_raw(fp.get(), &oy, 1, path);
  uint8_t kind = static_cast<uint8_t>(f.kind());
  write_raw(fp.get(), &kind, 1, path);
  write_raw(fp.get(), f.values().data(), f.values().size(), path);
  require(std::fflush(fp.get()) == 0, errc::io, "save_field: flush failed for " + path);
}

grid_field load_field(const std::string& path) {
  std::unique_ptr<std::FILE, file_closer> fp(std::fopen(path.c_str(), "rb"));
  require(fp != nullptr, errc::io, "load_field: cannot open " + path);
  char magic[8];
  read_raw(fp.get(), magic, 8, path);
  require(std::memcmp(magic, kMagic, 8) == 0, errc::io, "load_field: bad magic in " + path);
  uint32_t n = 0;
  read_raw(fp.get(), &n, 1, path);
  require(n >= 2 && n <= (1u << 20), errc::io, "load_field: implausible size in " + path);
  double spacing = 0, ox = 0, oy = 0;
  read_raw(fp.get(), &spacing, 1, path);
  read_raw(fp.get(), &ox, 1, path);
  read_raw(fp.get(), &oy, 1, path);
  uint8_t kind = 0;
  read_raw(fp.get(), &kind, 1, path);
  require(kind <= 2, errc::io, "load_field: bad field kind in " + path);
  require(spacing > 0.0 && std::isfinite(spacing), errc::io, "load_field: bad spacing in " + path);
  grid_field out(static_cast<int>(n), spacing, {ox, oy}, static_cast<field_kind>(kind));
  read_raw(fp.get(), out.values().data(), out.values().size(), path);
  // Must be exactly at EOF.
  char extra;
  require(std::fread(&extra, 1, 1, fp.get()) == 0, errc::io,
          "load_field: trailing bytes in " + path);
  return out;
}

}  // namespace lfpp
