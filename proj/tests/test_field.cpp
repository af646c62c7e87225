#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "lfpp/errors.hpp"
#include "lfpp/gff.hpp"
#include "lfpp/grid_field.hpp"
#include "oracles.hpp"

using namespace lfpp;

namespace {

const double kLog2 = std::log(2.0);

bool same_bits(const grid_field& a, const grid_field& b) {
  if (a.n() != b.n() || a.spacing() != b.spacing()) return false;
  for (size_t k = 0; k < a.values().size(); ++k)
    if (a.values()[k] != b.values()[k]) return false;
  return true;
}

double mean_of(const grid_field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / f.values().size();
}

std::string temp_path(const char* stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

}  // namespace

TEST_CASE("gff sampling is deterministic per seed and seed-sensitive") {
  grid_field a = sample_gff(128, 4.0, 42);
  grid_field b = sample_gff(128, 4.0, 42);
  grid_field c = sample_gff(128, 4.0, 43);
  CHECK(same_bits(a, b));
  CHECK_FALSE(same_bits(a, c));
  CHECK(a.kind() == field_kind::gff);
  CHECK(a.n() == 128);
  CHECK(a.spacing() == doctest::Approx(4.0 / 127).epsilon(1e-15));
}

TEST_CASE("gff normalization: zero mean and zero center circle average") {
  for (uint64_t seed : {1ull, 2ull, 99ull}) {
    grid_field f = sample_gff(256, 4.0, seed);
    CHECK(std::abs(mean_of(f)) <= 1e-9);
    auto avg = circle_average(f, f.center(), 1.0);
    CHECK(std::abs(avg.value) <= 1e-9);
    CHECK(avg.samples >= 4);
  }
}

TEST_CASE("gff rejects bad parameters") {
  CHECK_THROWS_AS(sample_gff(100, 4.0, 1), error);   // not a power of two
  CHECK_THROWS_AS(sample_gff(32, 4.0, 1), error);    // too small
  CHECK_THROWS_AS(sample_gff(128, 1.5, 1), error);   // radius-1 circle does not fit
  try {
    sample_gff(100, 4.0, 1);
  } catch (const error& e) {
    CHECK(e.code() == errc::config);
  }
}

TEST_CASE("circle average increments have variance log 2 across dyadic radii") {
  // Monte Carlo against the synthesis normalization: Var(h_r - h_{2r}) = log 2.
  const int seeds = 200;
  const double L = 4.0, r = L / 16.0;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < seeds; ++k) {
    grid_field f = sample_gff(256, L, 1000 + k);
    double hr = circle_average(f, f.center(), r).value;
    double h2r = circle_average(f, f.center(), 2 * r).value;
    double d = hr - h2r;
    s1 += d;
    s2 += d * d;
  }
  double mean = s1 / seeds;
  double var = s2 / seeds - mean * mean;
  CHECK(var == doctest::Approx(kLog2).epsilon(0.10));
  CHECK(std::abs(mean) < 0.2);  // increments are centered
}

TEST_CASE("circle average: constant fields, linearity, odd integrands") {
  const int n = 96;
  const double sp = 2.0 / (n - 1);
  grid_field cfield = grid_field(n, sp, {-1.0, -1.0}, field_kind::deterministic);
  for (auto& v : cfield.values()) v = 3.25;
  CHECK(circle_average(cfield, {0.0, 0.0}, 0.5).value == doctest::Approx(3.25).epsilon(1e-12));

  grid_field fx = grid_field::from_function(n, sp, {-1.0, -1.0}, [](double x, double) { return x; });
  // Odd integrand about the circle center: exact zero up to quadrature rounding.
  CHECK(std::abs(circle_average(fx, {0.0, 0.0}, 0.5).value) <= 1e-6);

  grid_field fy =
      grid_field::from_function(n, sp, {-1.0, -1.0}, [](double, double y) { return 2 * y + 1; });
  double a = circle_average(fx, {0.1, -0.2}, 0.3).value;
  double b = circle_average(fy, {0.1, -0.2}, 0.3).value;
  grid_field combo = add_fields(scale_field(fx, 2.0), scale_field(fy, -3.0));
  double c = circle_average(combo, {0.1, -0.2}, 0.3).value;
  CHECK(c == doctest::Approx(2.0 * a - 3.0 * b).epsilon(1e-12));
}

TEST_CASE("circle average rejects unresolvable and out-of-domain circles") {
  grid_field f = sample_gff(64, 4.0, 5);
  CHECK_THROWS_AS(circle_average(f, f.center(), 0.25 * f.spacing()), error);
  try {
    circle_average(f, f.center(), 0.25 * f.spacing());
  } catch (const error& e) {
    CHECK(e.code() == errc::resolution);
  }
  CHECK_THROWS_AS(circle_average(f, {0.1, 0.1}, 1.0), error);
  try {
    circle_average(f, {0.1, 0.1}, 1.0);
  } catch (const error& e) {
    CHECK(e.code() == errc::domain);
  }
}

TEST_CASE("batch circle averages agree with pointwise ones in the interior") {
  grid_field f = sample_gff(128, 4.0, 17);
  const double r = 0.3;
  auto all = circle_average_all(f, r);
  index_rect w = f.window(0.5);
  for (int i = w.i0; i <= w.i1; i += 9)
    for (int j = w.j0; j <= w.j1; j += 9) {
      vec2 p = f.position(i, j);
      double direct = circle_average(f, p, r).value;
      CHECK(all[static_cast<size_t>(i) * f.n() + j] == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("mollify matches direct spatial convolution and preserves constants") {
  const int n = 64;
  grid_field f = sample_gff(n, 4.0, 11);
  const double eps = 4.0 * f.spacing();
  grid_field g = mollify(f, eps);
  CHECK(g.kind() == field_kind::mollified);
  CHECK(g.mollification_eps() == eps);

  auto direct = lfpp_test::direct_mollify(f.values(), n, f.spacing(), eps);
  double worst = 0.0;
  for (size_t k = 0; k < direct.size(); ++k)
    worst = std::max(worst, std::abs(direct[k] - g.values()[k]));
  CHECK(worst <= 1e-10);

  grid_field cfield(n, f.spacing(), {0.0, 0.0}, field_kind::deterministic);
  for (auto& v : cfield.values()) v = -1.75;
  grid_field cm = mollify(cfield, eps);
  for (double v : cm.values()) CHECK(v == doctest::Approx(-1.75).epsilon(1e-12));
}

TEST_CASE("mollified point mass approximates the heat kernel peak") {
  const int n = 128;
  const double sp = 4.0 / (n - 1);
  grid_field spike(n, sp, {0.0, 0.0}, field_kind::deterministic);
  const double mass = 7.0;
  spike.at(n / 2, n / 2) = mass;
  const double eps = 6.0 * sp;
  grid_field g = mollify(spike, eps);
  // Continuum heat kernel at the spike: mass * sp^2 / (pi * eps^2).
  double predicted = mass * sp * sp / (M_PI * eps * eps);
  CHECK(g.at(n / 2, n / 2) == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("mollify is linear and rejects unresolvable eps") {
  const int n = 64;
  grid_field a = sample_gff(n, 4.0, 21);
  grid_field b = sample_gff(n, 4.0, 22);
  const double eps = 5.0 * a.spacing();
  grid_field lhs = mollify(add_fields(a, scale_field(b, 2.0)), eps);
  grid_field rhs = add_fields(mollify(a, eps), scale_field(mollify(b, eps), 2.0));
  for (size_t k = 0; k < lhs.values().size(); ++k)
    CHECK(lhs.values()[k] == doctest::Approx(rhs.values()[k]).epsilon(1e-9));

  CHECK_THROWS_AS(mollify(a, 1.5 * a.spacing()), error);
  try {
    mollify(a, 1.5 * a.spacing());
  } catch (const error& e) {
    CHECK(e.code() == errc::resolution);
  }
}

TEST_CASE("field addition: identity, inverse, commutativity, grid checks") {
  grid_field a = sample_gff(64, 4.0, 31);
  grid_field zero(a.n(), a.spacing(), a.origin(), field_kind::deterministic);
  grid_field same = add_fields(a, zero);
  for (size_t k = 0; k < a.values().size(); ++k) CHECK(same.values()[k] == a.values()[k]);

  grid_field cancel = add_fields(a, scale_field(a, -1.0));
  for (double v : cancel.values()) CHECK(v == 0.0);

  grid_field b = sample_gff(64, 4.0, 32);
  grid_field ab = add_fields(a, b);
  grid_field ba = add_fields(b, a);
  for (size_t k = 0; k < ab.values().size(); ++k) CHECK(ab.values()[k] == ba.values()[k]);

  grid_field small(32, a.spacing(), a.origin(), field_kind::deterministic);
  CHECK_THROWS_AS(add_fields(a, small), error);
}

TEST_CASE("value_at reproduces lattice values and bilinear midpoints") {
  grid_field f = sample_gff(64, 4.0, 41);
  vec2 p = f.position(10, 20);
  CHECK(f.value_at(p.x, p.y) == doctest::Approx(f.at(10, 20)).epsilon(1e-13));
  vec2 q = f.position(10, 21);
  double midpoint = f.value_at(0.5 * (p.x + q.x), p.y);
  CHECK(midpoint == doctest::Approx(0.5 * (f.at(10, 20) + f.at(10, 21))).epsilon(1e-12));
  CHECK_THROWS_AS(f.value_at(-1.0, 0.0), error);
}

TEST_CASE("field snapshots round-trip bit-exactly") {
  grid_field f = sample_gff(64, 4.0, 51);
  std::string path = temp_path("lfpp_test_field.dat");
  save_field(f, path);
  grid_field g = load_field(path);
  CHECK(same_bits(f, g));
  CHECK(g.kind() == f.kind());
  CHECK(g.origin().x == f.origin().x);
  CHECK(g.origin().y == f.origin().y);
  std::filesystem::remove(path);
}

TEST_CASE("snapshot loading rejects missing, corrupt, truncated, padded files") {
  std::string missing = temp_path("lfpp_no_such_file.dat");
  CHECK_THROWS_AS(load_field(missing), error);
  try {
    load_field(missing);
  } catch (const error& e) {
    CHECK(e.code() == errc::io);
  }

  std::string bad = temp_path("lfpp_bad_magic.dat");
  {
    std::ofstream out(bad, std::ios::binary);
    out << "NOTAFLD1 some garbage bytes";
  }
  CHECK_THROWS_AS(load_field(bad), error);
  std::filesystem::remove(bad);

  grid_field f = sample_gff(64, 4.0, 52);
  std::string trunc = temp_path("lfpp_truncated.dat");
  save_field(f, trunc);
  std::filesystem::resize_file(trunc, std::filesystem::file_size(trunc) / 2);
  CHECK_THROWS_AS(load_field(trunc), error);
  std::filesystem::remove(trunc);

  std::string padded = temp_path("lfpp_padded.dat");
  save_field(f, padded);
  {
    std::ofstream out(padded, std::ios::binary | std::ios::app);
    out << "x";
  }
  CHECK_THROWS_AS(load_field(padded), error);
  std::filesystem::remove(padded);
}

TEST_CASE("measurement window shrinks with the requested fraction") {
  grid_field f = sample_gff(128, 4.0, 61);
  index_rect full = f.window(1.0);
  CHECK(full.i0 == 0);
  CHECK(full.i1 == 127);
  index_rect half = f.window(0.5);
  CHECK(half.i0 >= 31);
  CHECK(half.i1 <= 96);
  CHECK(half.count() > 0);
  CHECK_THROWS_AS(f.window(0.0), error);
  CHECK_THROWS_AS(f.window(1.5), error);
}
