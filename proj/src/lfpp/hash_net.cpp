#include "lfpp/hash_net.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lfpp/errors.hpp"
#include "lfpp/shortest_path.hpp"

namespace lfpp {

namespace {

struct rect_raster {
  int i0, i1, j0, j1;  // inclusive vertex index ranges
  int rows() const { return i1 - i0 + 1; }
  int cols() const { return j1 - j0 + 1; }
};

rect_raster rasterize(const weight_grid& w, vec2 lo, vec2 hi) {
  const double sp = w.spacing();
  rect_raster r;
  r.j0 = static_cast<int>(std::ceil((lo.x - w.origin().x) / sp - 1e-12));
  r.j1 = static_cast<int>(std::floor((hi.x - w.origin().x) / sp + 1e-12));
  r.i0 = static_cast<int>(std::ceil((lo.y - w.origin().y) / sp - 1e-12));
  r.i1 = static_cast<int>(std::floor((hi.y - w.origin().y) / sp + 1e-12));
  require(r.i0 >= 0 && r.j0 >= 0 && r.i1 < w.n() && r.j1 < w.n(), errc::domain,
          "hash rectangle leaves the sampled domain");
  return r;
}

// Min-cost 4-neighbor crossing between the two short sides of the rectangle,
// confined to its raster. Ties settle by vertex id, as in grid_distance.
std::vector<uint32_t> crossing_path_4(const weight_grid& w, const rect_raster& r, bool horizontal) {
  const int n = w.n();
  const int rows = r.rows(), cols = r.cols();
  require(rows >= 2 && cols >= 2, errc::resolution, "hash rectangle rasterizes below 2x2");
  const size_t cells = static_cast<size_t>(rows) * cols;
  std::vector<double> dist(cells, kInf);
  std::vector<uint32_t> pred(cells, UINT32_MAX);
  std::vector<uint8_t> done(cells, 0);
  auto global = [&](uint32_t local) {
    return (r.i0 + local / cols) * static_cast<uint32_t>(n) + (r.j0 + local % cols);
  };

  using entry = std::pair<double, uint32_t>;  // (distance, global id); local stored via pred
  std::priority_queue<entry, std::vector<entry>, std::greater<entry>> heap;
  auto push_source = [&](int li, int lj) {
    uint32_t local = static_cast<uint32_t>(li) * cols + lj;
    dist[local] = 0.0;
    heap.emplace(0.0, global(local));
  };
  if (horizontal)
    for (int li = 0; li < rows; ++li) push_source(li, 0);
  else
    for (int lj = 0; lj < cols; ++lj) push_source(0, lj);

  const double half_sp = 0.5 * w.spacing();
  const auto& wv = w.values();
  constexpr int kAxis[4][2] = {{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  uint32_t goal = UINT32_MAX;
  while (!heap.empty()) {
    auto [d, g] = heap.top();
    heap.pop();
    int gi = static_cast<int>(g) / n, gj = static_cast<int>(g) % n;
    uint32_t u = static_cast<uint32_t>(gi - r.i0) * cols + (gj - r.j0);
    if (done[u]) continue;
    done[u] = 1;
    if (horizontal ? (gj == r.j1) : (gi == r.i1)) {
      goal = u;
      break;
    }
    double wu = wv[g];
    for (const auto& st : kAxis) {
      int vi = gi + st[0], vj = gj + st[1];
      if (vi < r.i0 || vi > r.i1 || vj < r.j0 || vj > r.j1) continue;
      uint32_t v = static_cast<uint32_t>(vi - r.i0) * cols + (vj - r.j0);
      if (done[v]) continue;
      double nd = d + half_sp * (wu + wv[static_cast<uint32_t>(vi) * n + vj]);
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        heap.emplace(nd, static_cast<uint32_t>(vi) * n + vj);
      }
    }
  }
  require(goal != UINT32_MAX, errc::internal, "hash crossing unreachable");
  std::vector<uint32_t> path;
  for (uint32_t v = goal; v != UINT32_MAX; v = pred[v]) path.push_back(global(v));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

hash_net build_hash(const dyadic_square& s, const weight_grid& w) {
  const double L = s.side();
  const vec2 c0 = s.corner();
  rect_raster sq = rasterize(w, c0, {c0.x + L, c0.y + L});
  require(sq.rows() >= 4 && sq.cols() >= 4, errc::resolution,
          "hash square rasterizes below 4x4 vertices");

  hash_net net;
  net.square = s;
  const double xm = c0.x + 0.5 * L, ym = c0.y + 0.5 * L;
  net.paths[0] = crossing_path_4(w, rasterize(w, c0, {c0.x + L, ym}), true);           // bottom
  net.paths[1] = crossing_path_4(w, rasterize(w, {c0.x, ym}, {c0.x + L, c0.y + L}), true);  // top
  net.paths[2] = crossing_path_4(w, rasterize(w, c0, {xm, c0.y + L}), false);          // left
  net.paths[3] = crossing_path_4(w, rasterize(w, {xm, c0.y}, {c0.x + L, c0.y + L}), false);  // right

  // Internal metric of the 3L x 3L enlargement, clipped to the domain.
  const int n = w.n();
  const double sp = w.spacing();
  auto clampi = [&](double v) { return std::clamp(static_cast<int>(v), 0, n - 1); };
  index_rect box;
  box.i0 = clampi(std::ceil((c0.y - L - w.origin().y) / sp - 1e-12));
  box.i1 = clampi(std::floor((c0.y + 2 * L - w.origin().y) / sp + 1e-12));
  box.j0 = clampi(std::ceil((c0.x - L - w.origin().x) / sp - 1e-12));
  box.j1 = clampi(std::floor((c0.x + 2 * L - w.origin().x) / sp + 1e-12));
  region_mask mask = region_mask::from_rect(n, box);

  std::vector<uint32_t> verts;
  for (const auto& p : net.paths) verts.insert(verts.end(), p.begin(), p.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  double diam = 0.0;
  for (uint32_t u : verts) {
    std::vector<double> df = grid_distance_field(w, {u}, &mask);
    for (uint32_t v : verts) diam = std::max(diam, df[v]);
  }
  net.diameter = diam;
  return net;
}

bool hashes_intersect(const hash_net& a, const hash_net& b) {
  std::vector<uint32_t> av;
  for (const auto& p : a.paths) av.insert(av.end(), p.begin(), p.end());
  std::sort(av.begin(), av.end());
  for (const auto& p : b.paths)
    for (uint32_t v : p)
      if (std::binary_search(av.begin(), av.end(), v)) return true;
  return false;
}

}  // namespace lfpp
