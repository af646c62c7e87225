#include "lfpp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lfpp/dimension.hpp"
#include "lfpp/errors.hpp"
#include "lfpp/rng.hpp"
#include "lfpp/shortest_path.hpp"
#include "lfpp/thick_points.hpp"

namespace lfpp {

namespace {

// Replica fan-out with deterministic slot assignment; the first exception
// wins and is rethrown on the caller thread.
template <class F>
void for_replicas(int count, int threads, F&& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < count; r = next.fetch_add(1)) {
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void check_common(const experiment_config& cfg) {
  require(cfg.xi > 0.0, errc::config, "config: xi must be positive");
  require(cfg.n >= 64, errc::config, "config: n must be at least 64");
  require(cfg.L >= 2.0, errc::config, "config: L must be at least 2");
  require(cfg.eps_ratio >= 2, errc::config, "config: eps_ratio must be at least 2");
  require(cfg.replicas >= 1, errc::config, "config: replicas must be positive");
  require(cfg.window_fraction > 0.0 && cfg.window_fraction < 1.0, errc::config,
          "config: window_fraction must sit in (0,1)");
}

vec2 domain_center(double L) { return {0.5 * L, 0.5 * L}; }

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  size_t idx = static_cast<size_t>(q * (v.size() - 1));
  return v[std::min(idx, v.size() - 1)];
}

}  // namespace

uint64_t step_replica_seed(uint64_t master, int step, int replica) {
  return replica_seed(master, static_cast<uint64_t>(step) * 1000003ull +
                                  static_cast<uint64_t>(replica));
}

replica_field make_replica_field(double xi, int n, double L, int eps_ratio, uint64_t seed) {
  replica_field rf;
  rf.h = sample_gff(n, L, seed);
  double eps = eps_ratio * rf.h.spacing();
  rf.w = build_weights(mollify(rf.h, eps), xi);
  return rf;
}

a_eps_result estimate_a_eps(const experiment_config& cfg, int step) {
  check_common(cfg);
  require(cfg.n <= 4096, errc::config, "estimate_a_eps: finest grid capped at 4096");
  require(step >= 0 && (cfg.n >> step) >= 64, errc::config,
          "estimate_a_eps: ladder step coarsens the grid below 64");
  const int n_k = cfg.n >> step;
  a_eps_result res;
  res.step = step;
  res.n = n_k;
  res.eps = cfg.eps_ratio * (cfg.L / (n_k - 1));
  res.samples.assign(cfg.replicas, 0.0);
  res.low_power = cfg.replicas < 8;

  const vec2 c = domain_center(cfg.L);
  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    replica_field rf = make_replica_field(cfg.xi, n_k, cfg.L, cfg.eps_ratio,
                                          step_replica_seed(cfg.master_seed, step, r));
    res.samples[r] =
        rect_crossing(rf.w, {c.x - 0.5, c.y - 0.5}, {c.x + 0.5, c.y + 0.5}, true).distance;
  });
  res.a_median = median_of(res.samples);
  return res;
}

exponent_run run_exponent(const experiment_config& cfg) {
  check_common(cfg);
  require(cfg.octaves >= 3, errc::config, "run_exponent: need at least 4 eps values");
  exponent_run run;
  std::vector<double> log_eps, log_a;
  for (int step = 0; step <= cfg.octaves; ++step) {
    run.steps.push_back(estimate_a_eps(cfg, step));
    log_eps.push_back(std::log(run.steps.back().eps));
    log_a.push_back(std::log(run.steps.back().a_median));
  }
  run.Q.xi = cfg.xi;
  run.Q.fit = least_squares(log_eps, log_a);
  run.Q.Q_hat = (1.0 - run.Q.fit.slope) / cfg.xi;
  run.Q.stderr_Q = run.Q.fit.stderr_slope / cfg.xi;
  run.Q.replicas_per_eps = cfg.replicas;
  for (const auto& st : run.steps) run.Q.eps_list.push_back(st.eps);
  return run;
}

scaling_constants estimate_scaling_constants(const exponent_run& run,
                                             const std::vector<double>& r_list) {
  require(r_list.size() >= 4, errc::config, "scaling constants: need at least 4 radii");
  const int top = static_cast<int>(run.steps.size()) - 1;
  require(top >= 1, errc::config, "scaling constants: ladder too short");

  scaling_constants sc;
  sc.r_list = r_list;
  sc.eps_used = run.steps[0].eps;  // smallest eps: step 0 is the finest grid
  std::vector<double> log_r, log_c;
  for (double r : r_list) {
    require(r > 0.0 && r <= 1.0, errc::config, "scaling constants: radii must sit in (0,1]");
    double j_real = -std::log2(r);
    int j = static_cast<int>(std::lround(j_real));
    require(std::abs(j_real - j) < 1e-9, errc::config,
            "scaling constants: radii must be dyadic 2^-j");
    require(j <= top, errc::resolution,
            "scaling constants: ladder too shallow for the requested radius");
    // eps/r = eps0 * 2^j lives at ladder step j.
    double c_r = r * run.steps[j].a_median / run.steps[0].a_median;
    sc.c_r.push_back(c_r);
    log_r.push_back(std::log(r));
    log_c.push_back(std::log(c_r));
  }
  sc.fit = least_squares(log_r, log_c);

  double max_mag = 0.0;
  for (size_t k = 0; k < r_list.size(); ++k)
    if (r_list[k] != 1.0)
      max_mag = std::max(max_mag, std::abs(log_c[k] / std::log(r_list[k])));
  sc.lambda = max_mag + 1.0;
  sc.sandwich_ok = true;
  for (size_t k = 0; k < r_list.size(); ++k) {
    double delta = r_list[k];
    double lo = std::pow(delta, sc.lambda) / sc.lambda;
    double hi = sc.lambda * std::pow(delta, -sc.lambda);
    if (!(lo <= sc.c_r[k] && sc.c_r[k] <= hi)) sc.sandwich_ok = false;
  }
  return sc;
}

tightness_result set_distance_tightness(const experiment_config& cfg, double r, double c_r,
                                        const std::vector<double>& A_list) {
  check_common(cfg);
  require(r > 0.0 && r <= 1.0, errc::config, "tightness: scale r must sit in (0,1]");
  require(c_r > 0.0, errc::config, "tightness: scaling constant must be positive");
  require(!A_list.empty(), errc::config, "tightness: empty threshold list");
  for (double A : A_list) require(A >= 1.0, errc::config, "tightness: thresholds must be >= 1");
  require(cfg.tight_k1 > 0.0 && cfg.tight_k2 < 0.5, errc::config,
          "tightness: set radii must sit inside the unit square");
  const double sp0 = cfg.L / (cfg.n - 1);
  require(cfg.tight_k1 * r >= 2.0 * sp0, errc::resolution,
          "tightness: inner set under-resolved at this grid");
  require(cfg.tight_k1 * r + sp0 < cfg.tight_k2 * r - sp0, errc::config,
          "tightness: set descriptors overlap once rasterized");

  tightness_result res;
  res.r = r;
  res.c_r = c_r;
  res.A_list = A_list;
  res.ratios.assign(cfg.replicas, 0.0);

  const vec2 c = domain_center(cfg.L);
  for_replicas(cfg.replicas, cfg.threads, [&](int rep) {
    replica_field rf = make_replica_field(cfg.xi, cfg.n, cfg.L, cfg.eps_ratio,
                                          step_replica_seed(cfg.master_seed, 0, rep));
    const weight_grid& w = rf.w;
    const int n = w.n();
    const double sp = w.spacing();

    // rU: the r-scaled unit square about the center; rings for rK1, rK2.
    index_rect box;
    box.i0 = static_cast<int>(std::ceil((c.y - 0.5 * r) / sp - 1e-12));
    box.i1 = static_cast<int>(std::floor((c.y + 0.5 * r) / sp + 1e-12));
    box.j0 = static_cast<int>(std::ceil((c.x - 0.5 * r) / sp - 1e-12));
    box.j1 = static_cast<int>(std::floor((c.x + 0.5 * r) / sp + 1e-12));
    region_mask mask = region_mask::from_rect(n, box);
    std::vector<uint32_t> inner, outer;
    for (int i = box.i0; i <= box.i1; ++i)
      for (int j = box.j0; j <= box.j1; ++j) {
        vec2 p = w.position(i, j);
        double d = std::hypot(p.x - c.x, p.y - c.y);
        if (std::abs(d - cfg.tight_k1 * r) <= 0.5 * sp)
          inner.push_back(static_cast<uint32_t>(i) * n + j);
        if (std::abs(d - cfg.tight_k2 * r) <= 0.5 * sp)
          outer.push_back(static_cast<uint32_t>(i) * n + j);
      }
    require(!inner.empty() && !outer.empty(), errc::resolution,
            "tightness: a set rasterized to nothing");
    double D = grid_distance(w, inner, outer, &mask).distance;
    double h_r = circle_average(rf.h, c, r).value;
    res.ratios[rep] = D / (c_r * std::exp(cfg.xi * h_r));
  });

  for (double A : A_list) {
    int hits = 0;
    for (double ratio : res.ratios)
      if (ratio >= 1.0 / A && ratio <= A) ++hits;
    res.probability.push_back(static_cast<double>(hits) / cfg.replicas);
  }
  return res;
}

holder_report holder_check(const experiment_config& cfg, double q_hat, double chi_margin) {
  check_common(cfg);
  require(q_hat > 0.0, errc::config, "holder_check: Q_hat must be positive");
  require(cfg.holder_pairs >= 1, errc::config, "holder_check: need at least one pair");

  holder_report rep;
  rep.bound = cfg.xi * (q_hat + 2.0) + chi_margin;
  rep.replica_max.assign(cfg.replicas, 0.0);
  std::vector<size_t> pair_counts(cfg.replicas, 0);

  const vec2 c = domain_center(cfg.L);
  const int landmarks_side = 5;
  const int per_landmark = std::max(
      1, cfg.holder_pairs / (cfg.replicas * landmarks_side * landmarks_side));

  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    replica_field rf = make_replica_field(cfg.xi, cfg.n, cfg.L, cfg.eps_ratio,
                                          step_replica_seed(cfg.master_seed, 0, r));
    const weight_grid& w = rf.w;
    const int n = w.n();
    const double sp = w.spacing();

    index_rect box;  // the unit square about the center
    box.i0 = static_cast<int>(std::ceil((c.y - 0.5) / sp));
    box.i1 = static_cast<int>(std::floor((c.y + 0.5) / sp));
    box.j0 = static_cast<int>(std::ceil((c.x - 0.5) / sp));
    box.j1 = static_cast<int>(std::floor((c.x + 0.5) / sp));
    region_mask mask = region_mask::from_rect(n, box);

    // Normalize by this replica's own unit-square crossing and the field
    // amplitude at unit scale, keeping the ratio scale-free.
    double crossing =
        rect_crossing(w, {c.x - 0.5, c.y - 0.5}, {c.x + 0.5, c.y + 0.5}, true).distance;
    double norm = crossing * std::exp(cfg.xi * circle_average(rf.h, c, 1.0).value);

    gaussian_rng rng(splitmix64(step_replica_seed(cfg.master_seed, 1, r)));
    double worst = -kInf;
    size_t used = 0;
    for (int li = 0; li < landmarks_side; ++li)
      for (int lj = 0; lj < landmarks_side; ++lj) {
        double ly = c.y - 0.25 + 0.5 * li / (landmarks_side - 1);
        double lx = c.x - 0.25 + 0.5 * lj / (landmarks_side - 1);
        int si = static_cast<int>(std::lround((ly) / sp));
        int sj = static_cast<int>(std::lround((lx) / sp));
        uint32_t src = static_cast<uint32_t>(si) * n + sj;
        std::vector<double> df = grid_distance_field(w, {src}, &mask);
        vec2 zs = w.position(si, sj);
        for (int t = 0; t < per_landmark; ++t) {
          double dx = (2.0 * rng.uniform01() - 1.0) * 0.125;
          double dy = (2.0 * rng.uniform01() - 1.0) * 0.125;
          int ti = static_cast<int>(std::lround((zs.y + dy) / sp));
          int tj = static_cast<int>(std::lround((zs.x + dx) / sp));
          if (ti < box.i0 || ti > box.i1 || tj < box.j0 || tj > box.j1) continue;
          vec2 zt = w.position(ti, tj);
          double sep = std::hypot(zt.x - zs.x, zt.y - zs.y);
          if (sep < 2.0 * sp || sep > 0.125) continue;
          double d = df[static_cast<uint32_t>(ti) * n + tj];
          if (!(d > 0.0) || d >= kInf) continue;
          worst = std::max(worst, std::log(d / norm) / std::log(sep));
          ++used;
        }
      }
    rep.replica_max[r] = worst;
    pair_counts[r] = used;
  });

  rep.max_ratio = *std::max_element(rep.replica_max.begin(), rep.replica_max.end());
  for (size_t c_ : pair_counts) rep.pairs += c_;
  rep.pass = rep.max_ratio <= rep.bound;
  return rep;
}

ball_topology_result ball_topology(const experiment_config& cfg) {
  check_common(cfg);
  require(cfg.quantile > 0.0 && cfg.quantile < 1.0, errc::config,
          "ball_topology: quantile must sit in (0,1)");
  require(cfg.refinements >= 1, errc::config, "ball_topology: need at least one refinement");

  ball_topology_result out;
  for (int m = 0; m < cfg.refinements; ++m) {
    const int n_m = cfg.n << m;
    require(n_m <= 4096, errc::config, "ball_topology: refinement pushes the grid past 4096");
    ball_topology_row row;
    row.refinement = m;
    row.n = n_m;
    row.component_counts.assign(cfg.replicas, 0);
    std::vector<double> radii(cfg.replicas, 0.0);

    for_replicas(cfg.replicas, cfg.threads, [&](int r) {
      replica_field rf = make_replica_field(cfg.xi, n_m, cfg.L, cfg.eps_ratio,
                                            step_replica_seed(cfg.master_seed, m, r));
      const weight_grid& w = rf.w;
      const int n = w.n();
      index_rect win = rf.h.window(cfg.window_fraction);
      region_mask window = region_mask::from_rect(n, win);
      uint32_t center =
          static_cast<uint32_t>((win.i0 + win.i1) / 2) * n + (win.j0 + win.j1) / 2;

      std::vector<double> dist = grid_distance_field(w, {center}, &window);
      std::vector<double> boundary;
      for (int j = win.j0; j <= win.j1; ++j) {
        boundary.push_back(dist[static_cast<uint32_t>(win.i0) * n + j]);
        boundary.push_back(dist[static_cast<uint32_t>(win.i1) * n + j]);
      }
      for (int i = win.i0 + 1; i < win.i1; ++i) {
        boundary.push_back(dist[static_cast<uint32_t>(i) * n + win.j0]);
        boundary.push_back(dist[static_cast<uint32_t>(i) * n + win.j1]);
      }
      double radius = quantile_of(boundary, cfg.quantile);
      radii[r] = radius;

      region_mask ball = region_mask::empty_mask(n);
      for (int i = win.i0; i <= win.i1; ++i)
        for (int j = win.j0; j <= win.j1; ++j) {
          uint32_t v = static_cast<uint32_t>(i) * n + j;
          if (dist[v] <= radius) ball.set(v, true);
        }
      row.component_counts[r] = complement_components(ball, window);
    });

    std::vector<double> counts(row.component_counts.begin(), row.component_counts.end());
    row.components_median = median_of(counts);
    row.radius_median = median_of(radii);
    out.rows.push_back(std::move(row));
  }
  return out;
}

thick_run_result run_thick(const experiment_config& cfg) {
  check_common(cfg);
  thick_run_result res;
  res.dims.assign(cfg.replicas, 0.0);
  res.theory = std::max(2.0 - 0.5 * cfg.alpha * cfg.alpha, 0.0);

  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    grid_field h = sample_gff(cfg.n, cfg.L, step_replica_seed(cfg.master_seed, 0, r));
    double r_min = cfg.r_min > 0.0 ? cfg.r_min : 4.0 * h.spacing();
    thick_set ts = thick_points(h, cfg.alpha, cfg.zeta, r_min, cfg.r_max);
    std::vector<vec2> pts = mask_points(ts.points, h.spacing(), h.origin());
    res.dims[r] = box_dimension(pts, cfg.level_min, cfg.level_max).value;
  });
  res.dim_median = median_of(res.dims);
  return res;
}

kpz_run_result run_kpz(const experiment_config& cfg) {
  check_common(cfg);
  kpz_run_result res;
  res.s_star.assign(cfg.replicas, 0.0);

  const vec2 c = domain_center(cfg.L);
  // Keep the probe segment off every dyadic horizontal line so covering
  // squares are counted without boundary multiplicity.
  const double y_off = 0.013;
  const double sp0 = cfg.L / (cfg.n - 1);
  std::vector<vec2> segment =
      raster_segment({c.x - 0.5, c.y + y_off}, {c.x + 0.5, c.y + y_off}, sp0);

  res.box_dim = box_dimension(segment, cfg.level_min, cfg.level_max).value;

  std::atomic<int> infinite{0};
  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    replica_field rf = make_replica_field(cfg.xi, cfg.n, cfg.L, cfg.eps_ratio,
                                          step_replica_seed(cfg.master_seed, 0, r));
    dimension_estimate est =
        kpz_dimension(segment, rf.w, cfg.level_min, cfg.level_max, cfg.kpz_s_max);
    res.s_star[r] = est.value;
    if (est.infinite) infinite.fetch_add(1);
  });
  res.infinite_count = infinite.load();

  std::vector<double> finite;
  for (double s : res.s_star)
    if (std::isfinite(s)) finite.push_back(s);
  res.s_median = finite.empty() ? std::numeric_limits<double>::infinity() : median_of(finite);
  return res;
}

}  // namespace lfpp
