#include "lfpp/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lfpp {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

double ring_norm(const annulus_spec& spec, vec2 p) {
  double dx = p.x - spec.center.x, dy = p.y - spec.center.y;
  return spec.square ? std::max(std::fabs(dx), std::fabs(dy)) : std::hypot(dx, dy);
}

void validate(const weight_grid& w, const annulus_spec& spec) {
  require(spec.r1 > 0.0 && spec.r2 > spec.r1, errc::config, "annulus: need 0 < r1 < r2");
  require(spec.r2 - spec.r1 >= 2.0 * w.spacing(), errc::resolution,
          "annulus: ring thinner than two lattice spacings");
  double pad = spec.r2 + w.spacing();
  double L = (w.n() - 1) * w.spacing();
  require(spec.center.x - pad >= w.origin().x && spec.center.y - pad >= w.origin().y &&
              spec.center.x + pad <= w.origin().x + L && spec.center.y + pad <= w.origin().y + L,
          errc::domain, "annulus: region leaves the sampled domain");
}

struct ring_sets {
  region_mask ring;
  std::vector<uint32_t> inner;
  std::vector<uint32_t> outer;
  bool has_hole = false;
};

ring_sets rasterize(const weight_grid& w, const annulus_spec& spec, const region_mask* mask) {
  const int n = w.n();
  const double sp = w.spacing();
  const double slack = 0.5 * sp;
  ring_sets out;
  out.ring = region_mask(n, false);
  // Only the bounding box of the annulus needs scanning.
  auto clampi = [&](double v) { return std::min(n - 1, std::max(0, static_cast<int>(v))); };
  int i0 = clampi(std::floor((spec.center.y - spec.r2 - sp - w.origin().y) / sp));
  int i1 = clampi(std::ceil((spec.center.y + spec.r2 + sp - w.origin().y) / sp));
  int j0 = clampi(std::floor((spec.center.x - spec.r2 - sp - w.origin().x) / sp));
  int j1 = clampi(std::ceil((spec.center.x + spec.r2 + sp - w.origin().x) / sp));
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) {
      double d = ring_norm(spec, w.position(i, j));
      if (d < spec.r1 - slack) {
        out.has_hole = true;
        continue;
      }
      if (d > spec.r2 + slack) continue;
      uint32_t v = static_cast<uint32_t>(i) * n + j;
      if (mask != nullptr && !mask->test(v)) continue;
      out.ring.set(v, true);
      if (d <= spec.r1 + slack) out.inner.push_back(v);
      if (d >= spec.r2 - slack) out.outer.push_back(v);
    }
  return out;
}

}  // namespace

region_mask annulus_mask(const weight_grid& w, const annulus_spec& spec) {
  validate(w, spec);
  return rasterize(w, spec, nullptr).ring;
}

distance_result across_annulus(const weight_grid& w, const annulus_spec& spec,
                               const region_mask* mask) {
  validate(w, spec);
  ring_sets rs = rasterize(w, spec, mask);
  require(rs.has_hole, errc::resolution, "across_annulus: hole contains no vertices");
  require(!rs.inner.empty() && !rs.outer.empty(), errc::resolution,
          "across_annulus: a boundary ring rasterizes to no vertices");
  return grid_distance(w, rs.inner, rs.outer, &rs.ring, true);
}

distance_result around_annulus(const weight_grid& w, const annulus_spec& spec,
                               const region_mask* mask) {
  validate(w, spec);
  ring_sets rs = rasterize(w, spec, mask);
  require(rs.has_hole, errc::resolution, "around_annulus: hole contains no vertices");

  const int n = w.n();
  const double sp = w.spacing();
  const double cx = spec.center.x, cy = spec.center.y;
  const auto& wv = w.values();

  // Work in the bounding box of the annulus; the per-cut-edge searches reuse
  // these local arrays.
  auto clampi = [&](double v) { return std::min(n - 1, std::max(0, static_cast<int>(v))); };
  const int bi0 = clampi(std::floor((cy - spec.r2 - sp - w.origin().y) / sp));
  const int bi1 = clampi(std::ceil((cy + spec.r2 + sp - w.origin().y) / sp));
  const int bj0 = clampi(std::floor((cx - spec.r2 - sp - w.origin().x) / sp));
  const int bj1 = clampi(std::ceil((cx + spec.r2 + sp - w.origin().x) / sp));
  const int bw = bj1 - bj0 + 1, bh = bi1 - bi0 + 1;
  const size_t local_total = static_cast<size_t>(bw) * bh;

  auto to_local = [&](uint32_t v) -> uint32_t {
    int i = static_cast<int>(v) / n, j = static_cast<int>(v) % n;
    return static_cast<uint32_t>(i - bi0) * bw + (j - bj0);
  };
  auto to_global = [&](uint32_t lv) -> uint32_t {
    int i = static_cast<int>(lv) / bw + bi0, j = static_cast<int>(lv) % bw + bj0;
    return static_cast<uint32_t>(i) * n + j;
  };

  auto side_up = [&](int i) { return w.origin().y + i * sp >= cy; };
  // Does the straight segment u-v cross the rightward horizontal ray from
  // the center? Endpoints exactly on the ray count as the upper side.
  auto crosses_cut = [&](int ui, int uj, int vi, int vj) {
    if (side_up(ui) == side_up(vi)) return false;
    vec2 pu = w.position(ui, uj), pv = w.position(vi, vj);
    double t = (cy - pu.y) / (pv.y - pu.y);
    double xstar = pu.x + t * (pv.x - pu.x);
    return xstar > cx;
  };

  struct step {
    int di, dj;
    double len;
  };
  constexpr step steps[8] = {{-1, -1, kSqrt2}, {-1, 0, 1.0}, {-1, 1, kSqrt2}, {0, -1, 1.0},
                             {0, 1, 1.0},      {1, -1, kSqrt2}, {1, 0, 1.0},  {1, 1, kSqrt2}};

  // Enumerate cut edges (upper endpoint first), deterministically ordered.
  std::vector<std::pair<uint32_t, uint32_t>> cut_edges;  // global ids
  for (int ui = bi0; ui <= bi1; ++ui) {
    if (!side_up(ui)) continue;
    for (int uj = bj0; uj <= bj1; ++uj) {
      uint32_t u = static_cast<uint32_t>(ui) * n + uj;
      if (!rs.ring.test(u)) continue;
      for (const auto& st : steps) {
        int vi = ui + st.di, vj = uj + st.dj;
        if (vi < 0 || vi >= n || vj < 0 || vj >= n) continue;
        uint32_t v = static_cast<uint32_t>(vi) * n + vj;
        if (!rs.ring.test(v) || side_up(vi)) continue;
        if (crosses_cut(ui, uj, vi, vj)) cut_edges.emplace_back(u, v);
      }
    }
  }

  distance_result best;
  if (cut_edges.empty()) return best;  // ray fully blocked: no admissible loop

  const double half_sp = 0.5 * sp;
  std::vector<double> dist(local_total);
  std::vector<uint32_t> pred(local_total);
  std::vector<uint8_t> done(local_total);

  for (const auto& [a, b] : cut_edges) {
    int ai = static_cast<int>(a) / n, aj = static_cast<int>(a) % n;
    int bi = static_cast<int>(b) / n, bj = static_cast<int>(b) % n;
    double elen = (ai != bi && aj != bj) ? kSqrt2 : 1.0;
    double ecost = half_sp * elen * (wv[a] + wv[b]);
    double bound = best.distance - ecost;  // only improvements matter
    if (bound <= 0.0) continue;

    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    std::priority_queue<std::pair<double, uint32_t>, std::vector<std::pair<double, uint32_t>>,
                        std::greater<>> heap;
    uint32_t la = to_local(a), lb = to_local(b);
    dist[la] = 0.0;
    pred[la] = UINT32_MAX;
    heap.emplace(0.0, la);
    double found = kInf;
    while (!heap.empty()) {
      auto [d, lu] = heap.top();
      heap.pop();
      if (done[lu]) continue;
      if (d >= bound) break;
      done[lu] = 1;
      if (lu == lb) {
        found = d;
        break;
      }
      uint32_t u = to_global(lu);
      int ui = static_cast<int>(u) / n, uj = static_cast<int>(u) % n;
      double wu = wv[u];
      for (const auto& st : steps) {
        int vi = ui + st.di, vj = uj + st.dj;
        if (vi < bi0 || vi > bi1 || vj < bj0 || vj > bj1) continue;
        uint32_t v = static_cast<uint32_t>(vi) * n + vj;
        if (!rs.ring.test(v)) continue;
        uint32_t lv = to_local(v);
        if (done[lv] || crosses_cut(ui, uj, vi, vj)) continue;
        double nd = d + half_sp * st.len * (wu + wv[v]);
        if (nd < dist[lv]) {
          dist[lv] = nd;
          pred[lv] = lu;
          heap.emplace(nd, lv);
          ++best.relaxations;
        }
      }
    }
    if (found + ecost < best.distance) {
      best.distance = found + ecost;
      best.reachable = true;
      best.geodesic.clear();
      for (uint32_t lv = lb; lv != UINT32_MAX; lv = pred[lv]) best.geodesic.push_back(to_global(lv));
      std::reverse(best.geodesic.begin(), best.geodesic.end());
      best.geodesic.push_back(best.geodesic.front());  // close the loop across the cut edge
    }
  }
  return best;
}

distance_result rect_crossing(const weight_grid& w, vec2 lo, vec2 hi, bool horizontal,
                              bool want_geodesic) {
  require(hi.x > lo.x && hi.y > lo.y, errc::config, "rect_crossing: empty rectangle");
  const int n = w.n();
  const double sp = w.spacing();
  double L = (n - 1) * sp;
  require(lo.x >= w.origin().x && lo.y >= w.origin().y && hi.x <= w.origin().x + L &&
              hi.y <= w.origin().y + L,
          errc::domain, "rect_crossing: rectangle leaves the sampled domain");
  int j0 = static_cast<int>(std::ceil((lo.x - w.origin().x) / sp - 1e-12));
  int j1 = static_cast<int>(std::floor((hi.x - w.origin().x) / sp + 1e-12));
  int i0 = static_cast<int>(std::ceil((lo.y - w.origin().y) / sp - 1e-12));
  int i1 = static_cast<int>(std::floor((hi.y - w.origin().y) / sp + 1e-12));
  require(j1 - j0 >= 1 && i1 - i0 >= 1, errc::resolution,
          "rect_crossing: rectangle rasterizes to fewer than 2x2 vertices");

  region_mask rect(n, false);
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) rect.set(i, j, true);

  std::vector<uint32_t> src, tgt;
  if (horizontal) {
    for (int i = i0; i <= i1; ++i) {
      src.push_back(static_cast<uint32_t>(i) * n + j0);
      tgt.push_back(static_cast<uint32_t>(i) * n + j1);
    }
  } else {
    for (int j = j0; j <= j1; ++j) {
      src.push_back(static_cast<uint32_t>(i0) * n + j);
      tgt.push_back(static_cast<uint32_t>(i1) * n + j);
    }
  }
  return grid_distance(w, src, tgt, &rect, want_geodesic);
}

}  // namespace lfpp
