#include "lfpp/runner.hpp"

#include <cmath>
#include <thread>

#include "lfpp/dimension.hpp"
#include "lfpp/errors.hpp"
#include "lfpp/results_io.hpp"
#include "lfpp/rng.hpp"

namespace lfpp {

namespace {

using nlohmann::json;

experiment_config normalized(experiment_config cfg) {
  if (cfg.threads == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    cfg.threads = hw ? static_cast<int>(hw) : 1;
  }
  return cfg;
}

std::vector<double> ladder_r_list(int octaves) {
  std::vector<double> r_list;
  for (int j = 0; j <= octaves; ++j) r_list.push_back(std::ldexp(1.0, -j));
  return r_list;
}

void cmd_sample(results_writer& w, const experiment_config& cfg) {
  grid_field h = sample_gff(cfg.n, cfg.L, replica_seed(cfg.master_seed, 0));
  save_field(h, w.dir + "/field.dat");
  w.outputs.push_back("field.dat");
  double lo = h.values()[0], hi = h.values()[0], sum = 0.0;
  for (double v : h.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  write_aggregate(w, json{{"n", cfg.n},
                          {"L", cfg.L},
                          {"spacing", h.spacing()},
                          {"min", lo},
                          {"max", hi},
                          {"mean", sum / h.values().size()}});
}

void cmd_distance(results_writer& w, const experiment_config& cfg) {
  a_eps_result res = estimate_a_eps(cfg, 0);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < res.samples.size(); ++r)
    rows.push_back({static_cast<double>(r), res.samples[r]});
  write_csv(w, "replicas.csv", {"replica", "crossing"}, rows);
  write_aggregate(w, json{{"a_median", res.a_median},
                          {"eps", res.eps},
                          {"n", res.n},
                          {"low_power", res.low_power}});
}

json q_to_json(const q_estimate& q) {
  return json{{"xi", q.xi},
              {"Q_hat", q.Q_hat},
              {"stderr_Q", q.stderr_Q},
              {"eps_list", q.eps_list},
              {"replicas_per_eps", q.replicas_per_eps},
              {"fit", fit_to_json(q.fit)}};
}

void exponent_outputs(results_writer& w, const exponent_run& run) {
  std::vector<std::vector<double>> rows;
  for (const auto& st : run.steps)
    for (size_t r = 0; r < st.samples.size(); ++r)
      rows.push_back({static_cast<double>(st.step), static_cast<double>(st.n), st.eps,
                      static_cast<double>(r), st.samples[r]});
  write_csv(w, "replicas.csv", {"step", "n", "eps", "replica", "crossing"}, rows);

  std::vector<std::array<double, 3>> fig;
  for (const auto& st : run.steps) {
    double mean = 0.0;
    for (double s : st.samples) mean += std::log(s);
    mean /= st.samples.size();
    double var = 0.0;
    for (double s : st.samples) var += (std::log(s) - mean) * (std::log(s) - mean);
    double se = st.samples.size() > 1
                    ? std::sqrt(var / (st.samples.size() - 1) / st.samples.size())
                    : 0.0;
    fig.push_back({std::log(st.eps), std::log(st.a_median), se});
  }
  write_tsv(w, "fig_exponent.tsv", fig);
}

void cmd_exponent(results_writer& w, const experiment_config& cfg) {
  exponent_run run = run_exponent(cfg);
  exponent_outputs(w, run);
  write_aggregate(w, json{{"Q", q_to_json(run.Q)}});
}

void cmd_scaling(results_writer& w, const experiment_config& cfg) {
  exponent_run run = run_exponent(cfg);
  scaling_constants sc = estimate_scaling_constants(run, ladder_r_list(cfg.octaves));
  exponent_outputs(w, run);

  std::vector<std::vector<double>> rows;
  std::vector<std::array<double, 3>> fig;
  for (size_t k = 0; k < sc.r_list.size(); ++k) {
    rows.push_back({sc.r_list[k], sc.c_r[k]});
    fig.push_back({std::log(sc.r_list[k]), std::log(sc.c_r[k]), 0.0});
  }
  write_csv(w, "constants.csv", {"r", "c_r"}, rows);
  write_tsv(w, "fig_scaling.tsv", fig);
  write_aggregate(w, json{{"Q", q_to_json(run.Q)},
                          {"scaling", json{{"slope", sc.fit.slope},
                                           {"stderr_slope", sc.fit.stderr_slope},
                                           {"xi_Q_hat", cfg.xi * run.Q.Q_hat},
                                           {"lambda", sc.lambda},
                                           {"sandwich_ok", sc.sandwich_ok},
                                           {"eps_used", sc.eps_used},
                                           {"fit", fit_to_json(sc.fit)}}}});
}

void cmd_kpz(results_writer& w, const experiment_config& cfg) {
  kpz_run_result res = run_kpz(cfg);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < res.s_star.size(); ++r)
    rows.push_back({static_cast<double>(r), res.s_star[r],
                    std::isinf(res.s_star[r]) ? 1.0 : 0.0});
  write_csv(w, "replicas.csv", {"replica", "s_star", "infinite"}, rows);
  write_aggregate(w, json{{"s_median", res.s_median},
                          {"box_dim", res.box_dim},
                          {"infinite_count", res.infinite_count},
                          {"level_min", cfg.level_min},
                          {"level_max", cfg.level_max}});
}

void cmd_thick(results_writer& w, const experiment_config& cfg) {
  thick_run_result res = run_thick(cfg);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < res.dims.size(); ++r)
    rows.push_back({static_cast<double>(r), res.dims[r]});
  write_csv(w, "replicas.csv", {"replica", "box_dim"}, rows);
  write_aggregate(w, json{{"dim_median", res.dim_median},
                          {"theory", res.theory},
                          {"alpha", cfg.alpha},
                          {"zeta", cfg.zeta}});
}

void cmd_ball_topology(results_writer& w, const experiment_config& cfg) {
  ball_topology_result res = ball_topology(cfg);
  std::vector<std::vector<double>> rows;
  std::vector<std::array<double, 3>> fig;
  json agg = json::array();
  for (const auto& row : res.rows) {
    for (size_t r = 0; r < row.component_counts.size(); ++r)
      rows.push_back({static_cast<double>(row.refinement), static_cast<double>(row.n),
                      static_cast<double>(r), static_cast<double>(row.component_counts[r])});
    fig.push_back({static_cast<double>(row.n), row.components_median, 0.0});
    agg.push_back(json{{"refinement", row.refinement},
                       {"n", row.n},
                       {"components_median", row.components_median},
                       {"radius_median", row.radius_median}});
  }
  write_csv(w, "replicas.csv", {"refinement", "n", "replica", "components"}, rows);
  write_tsv(w, "fig_ball_topology.tsv", fig);
  write_aggregate(w, json{{"rows", agg}, {"quantile", cfg.quantile}});
}

void cmd_tightness(results_writer& w, const experiment_config& cfg) {
  exponent_run run = run_exponent(cfg);
  scaling_constants sc = estimate_scaling_constants(run, ladder_r_list(cfg.octaves));
  int j = static_cast<int>(std::lround(-std::log2(cfg.tight_r)));
  require(j >= 0 && j <= cfg.octaves && std::abs(std::ldexp(1.0, -j) - cfg.tight_r) < 1e-12,
          errc::config, "tightness: tight_r must be one of the ladder radii 2^-j");
  double c_r = sc.c_r[static_cast<size_t>(j)];

  tightness_result res = set_distance_tightness(cfg, cfg.tight_r, c_r, cfg.A_list);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < res.ratios.size(); ++r)
    rows.push_back({static_cast<double>(r), res.ratios[r]});
  write_csv(w, "replicas.csv", {"replica", "ratio"}, rows);
  std::vector<std::vector<double>> table;
  std::vector<std::array<double, 3>> fig;
  for (size_t k = 0; k < res.A_list.size(); ++k) {
    table.push_back({res.A_list[k], res.probability[k]});
    fig.push_back({res.A_list[k], res.probability[k], 0.0});
  }
  write_csv(w, "table.csv", {"A", "probability"}, table);
  write_tsv(w, "fig_tightness.tsv", fig);
  write_aggregate(w, json{{"r", res.r}, {"c_r", res.c_r}, {"Q", q_to_json(run.Q)}});
}

void cmd_holder(results_writer& w, const experiment_config& cfg) {
  exponent_run run = run_exponent(cfg);
  holder_report rep = holder_check(cfg, run.Q.Q_hat, cfg.holder_margin);
  std::vector<std::vector<double>> rows;
  for (size_t r = 0; r < rep.replica_max.size(); ++r)
    rows.push_back({static_cast<double>(r), rep.replica_max[r]});
  write_csv(w, "replicas.csv", {"replica", "max_ratio"}, rows);
  write_aggregate(w, json{{"bound", rep.bound},
                          {"max_ratio", rep.max_ratio},
                          {"pairs", rep.pairs},
                          {"pass", rep.pass},
                          {"Q", q_to_json(run.Q)}});
}

}  // namespace

void run_command(const std::string& command, const experiment_config& cfg_in,
                 const std::string& out_dir) {
  experiment_config cfg = normalized(cfg_in);
  results_writer w = open_results_dir(out_dir, cfg_in, command);
  if (command == "sample")
    cmd_sample(w, cfg);
  else if (command == "distance")
    cmd_distance(w, cfg);
  else if (command == "exponent")
    cmd_exponent(w, cfg);
  else if (command == "scaling")
    cmd_scaling(w, cfg);
  else if (command == "kpz")
    cmd_kpz(w, cfg);
  else if (command == "thick")
    cmd_thick(w, cfg);
  else if (command == "ball-topology")
    cmd_ball_topology(w, cfg);
  else if (command == "tightness")
    cmd_tightness(w, cfg);
  else if (command == "holder")
    cmd_holder(w, cfg);
  else
    fail(errc::config, "unknown command: " + command);
  write_manifest(w);
}

}  // namespace lfpp
