#include "lfpp/shortest_path.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>
#include <thread>

namespace lfpp {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

struct neighbor_step {
  int di, dj;
  double len;  // |delta|
};

constexpr neighbor_step kSteps[8] = {
    {-1, -1, kSqrt2}, {-1, 0, 1.0}, {-1, 1, kSqrt2}, {0, -1, 1.0},
    {0, 1, 1.0},      {1, -1, kSqrt2}, {1, 0, 1.0},  {1, 1, kSqrt2},
};

using heap_entry = std::pair<double, uint32_t>;
using min_heap = std::priority_queue<heap_entry, std::vector<heap_entry>, std::greater<heap_entry>>;

void check_subset(const std::vector<uint32_t>& vs, const region_mask* mask, size_t limit,
                  const char* what) {
  require(!vs.empty(), errc::config, std::string(what) + ": empty vertex set");
  for (uint32_t v : vs) {
    require(v < limit, errc::config, std::string(what) + ": vertex id out of range");
    require(mask == nullptr || mask->test(v), errc::config,
            std::string(what) + ": vertex outside the region mask");
  }
}

}  // namespace

distance_result grid_distance(const weight_grid& w, const std::vector<uint32_t>& sources,
                              const std::vector<uint32_t>& targets, const region_mask* mask,
                              bool want_geodesic) {
  const int n = w.n();
  const size_t total = static_cast<size_t>(n) * n;
  check_subset(sources, mask, total, "grid_distance sources");
  check_subset(targets, mask, total, "grid_distance targets");

  std::vector<double> dist(total, kInf);
  std::vector<uint8_t> done(total, 0);
  std::vector<uint8_t> is_target(total, 0);
  std::vector<uint32_t> pred;
  if (want_geodesic) pred.assign(total, UINT32_MAX);
  for (uint32_t t : targets) is_target[t] = 1;

  min_heap heap;
  for (uint32_t s : sources) {
    if (dist[s] > 0.0) {
      dist[s] = 0.0;
      heap.emplace(0.0, s);
    }
  }

  distance_result res;
  const double half_sp = 0.5 * w.spacing();
  const auto& wv = w.values();

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (is_target[u]) {
      res.distance = d;
      res.reachable = true;
      if (want_geodesic) {
        std::vector<uint32_t> path;
        for (uint32_t v = u; v != UINT32_MAX; v = pred[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        res.geodesic = std::move(path);
      }
      return res;
    }
    int ui = static_cast<int>(u) / n, uj = static_cast<int>(u) % n;
    double wu = wv[u];
    for (const auto& st : kSteps) {
      int vi = ui + st.di, vj = uj + st.dj;
      if (vi < 0 || vi >= n || vj < 0 || vj >= n) continue;
      uint32_t v = static_cast<uint32_t>(vi) * n + vj;
      if (done[v] || (mask != nullptr && !mask->test(v))) continue;
      double nd = d + half_sp * st.len * (wu + wv[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        if (want_geodesic) pred[v] = u;
        heap.emplace(nd, v);
        ++res.relaxations;
      }
    }
  }
  return res;  // unreachable
}

std::vector<double> grid_distance_field(const weight_grid& w, const std::vector<uint32_t>& sources,
                                        const region_mask* mask, double radius_bound) {
  const int n = w.n();
  const size_t total = static_cast<size_t>(n) * n;
  check_subset(sources, mask, total, "grid_distance_field sources");

  std::vector<double> dist(total, kInf);
  std::vector<uint8_t> done(total, 0);
  min_heap heap;
  for (uint32_t s : sources) {
    if (dist[s] > 0.0) {
      dist[s] = 0.0;
      heap.emplace(0.0, s);
    }
  }
  const double half_sp = 0.5 * w.spacing();
  const auto& wv = w.values();
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    if (d > radius_bound) break;
    done[u] = 1;
    int ui = static_cast<int>(u) / n, uj = static_cast<int>(u) % n;
    double wu = wv[u];
    for (const auto& st : kSteps) {
      int vi = ui + st.di, vj = uj + st.dj;
      if (vi < 0 || vi >= n || vj < 0 || vj >= n) continue;
      uint32_t v = static_cast<uint32_t>(vi) * n + vj;
      if (done[v] || (mask != nullptr && !mask->test(v))) continue;
      double nd = d + half_sp * st.len * (wu + wv[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  // Entries past the bound were relaxed but never settled; report them as
  // unknown so callers see a consistent truncated field.
  if (radius_bound < kInf)
    for (size_t v = 0; v < total; ++v)
      if (!done[v]) dist[v] = kInf;
  return dist;
}

std::vector<distance_result> grid_distance_many(
    const weight_grid& w, const std::vector<std::pair<uint32_t, uint32_t>>& pairs,
    const region_mask* mask, int threads) {
  std::vector<distance_result> out(pairs.size());
  if (pairs.empty()) return out;
  int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(pairs.size())));

  std::atomic<size_t> next{0};
  auto body = [&]() {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= pairs.size()) break;
      out[k] = grid_distance(w, {pairs[k].first}, {pairs[k].second}, mask, false);
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return out;
}

region_mask metric_ball(const weight_grid& w, uint32_t center, double radius,
                        const region_mask& mask) {
  require(radius >= 0.0, errc::config, "metric_ball: negative radius");
  auto dist = grid_distance_field(w, {center}, &mask, radius);
  region_mask ball(w.n(), false);
  for (uint32_t v = 0; v < dist.size(); ++v)
    if (dist[v] <= radius) ball.set(v, true);
  return ball;
}

int complement_components(const region_mask& ball, const region_mask& window) {
  require(ball.n() == window.n(), errc::config, "complement_components: size mismatch");
  const int n = window.n();
  std::vector<uint8_t> seen(static_cast<size_t>(n) * n, 0);
  std::vector<uint32_t> stack;
  int bounded = 0;
  bool any_unbounded = false;
  auto in_complement = [&](uint32_t v) { return window.test(v) && !ball.test(v); };
  for (uint32_t start = 0; start < seen.size(); ++start) {
    if (seen[start] || !in_complement(start)) continue;
    bool touches_frame = false;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      uint32_t u = stack.back();
      stack.pop_back();
      int ui = static_cast<int>(u) / n, uj = static_cast<int>(u) % n;
      const int di[4] = {-1, 1, 0, 0};
      const int dj[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        int vi = ui + di[k], vj = uj + dj[k];
        if (vi < 0 || vi >= n || vj < 0 || vj >= n) {
          touches_frame = true;
          continue;
        }
        uint32_t v = static_cast<uint32_t>(vi) * n + vj;
        if (!window.test(v)) {
          touches_frame = true;
          continue;
        }
        if (!seen[v] && !ball.test(v)) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    if (touches_frame)
      any_unbounded = true;
    else
      ++bounded;
  }
  return bounded + (any_unbounded ? 1 : 0);
}

}  // namespace lfpp
