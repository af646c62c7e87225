// C ABI layer: opaque handles over the core types, exceptions mapped to
// status codes, last-error text kept per thread.
#include "lfpp/lfpp.h"

#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "lfpp/dimension.hpp"
#include "lfpp/errors.hpp"
#include "lfpp/gff.hpp"
#include "lfpp/grid_field.hpp"
#include "lfpp/params.hpp"
#include "lfpp/results_io.hpp"
#include "lfpp/runner.hpp"
#include "lfpp/shortest_path.hpp"
#include "lfpp/weights.hpp"

struct lfpp_field {
  lfpp::grid_field f;
};
struct lfpp_weights {
  lfpp::weight_grid w;
};
struct lfpp_mask {
  lfpp::region_mask m;
};

namespace {

thread_local std::string g_last_error;

lfpp_status from_errc(lfpp::errc c) {
  switch (c) {
    case lfpp::errc::ok: return LFPP_OK;
    case lfpp::errc::config: return LFPP_ERR_CONFIG;
    case lfpp::errc::domain: return LFPP_ERR_DOMAIN;
    case lfpp::errc::resolution: return LFPP_ERR_RESOLUTION;
    case lfpp::errc::io: return LFPP_ERR_IO;
    case lfpp::errc::internal: return LFPP_ERR_INTERNAL;
  }
  return LFPP_ERR_INTERNAL;
}

template <class Fn>
lfpp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return LFPP_OK;
  } catch (const lfpp::error& e) {
    g_last_error = e.what();
    return from_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LFPP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LFPP_ERR_INTERNAL;
  }
}

void check_ptr(const void* p, const char* what) {
  lfpp::require(p != nullptr, lfpp::errc::config, std::string(what) + ": null argument");
}

std::vector<uint32_t> copy_ids(const uint32_t* ids, size_t count, const char* what) {
  check_ptr(ids, what);
  lfpp::require(count > 0, lfpp::errc::config, std::string(what) + ": empty vertex list");
  return std::vector<uint32_t>(ids, ids + count);
}

}  // namespace

extern "C" {

const char* lfpp_version(void) { return lfpp::kToolVersion; }

const char* lfpp_last_error(void) { return g_last_error.c_str(); }

/* ---- fields ---- */

lfpp_status lfpp_field_sample(int n, double L, uint64_t seed, lfpp_field** out) {
  return guarded([&] {
    check_ptr(out, "lfpp_field_sample");
    *out = new lfpp_field{lfpp::sample_gff(n, L, seed)};
  });
}

lfpp_status lfpp_field_load(const char* path, lfpp_field** out) {
  return guarded([&] {
    check_ptr(path, "lfpp_field_load");
    check_ptr(out, "lfpp_field_load");
    *out = new lfpp_field{lfpp::load_field(path)};
  });
}

lfpp_status lfpp_field_save(const lfpp_field* f, const char* path) {
  return guarded([&] {
    check_ptr(f, "lfpp_field_save");
    check_ptr(path, "lfpp_field_save");
    lfpp::save_field(f->f, path);
  });
}

lfpp_status lfpp_field_mollify(const lfpp_field* f, double eps, lfpp_field** out) {
  return guarded([&] {
    check_ptr(f, "lfpp_field_mollify");
    check_ptr(out, "lfpp_field_mollify");
    *out = new lfpp_field{lfpp::mollify(f->f, eps)};
  });
}

lfpp_status lfpp_field_add(const lfpp_field* a, const lfpp_field* b, lfpp_field** out) {
  return guarded([&] {
    check_ptr(a, "lfpp_field_add");
    check_ptr(b, "lfpp_field_add");
    check_ptr(out, "lfpp_field_add");
    *out = new lfpp_field{lfpp::add_fields(a->f, b->f)};
  });
}

lfpp_status lfpp_field_circle_average(const lfpp_field* f, double x, double y, double r,
                                      double* out_value) {
  return guarded([&] {
    check_ptr(f, "lfpp_field_circle_average");
    check_ptr(out_value, "lfpp_field_circle_average");
    *out_value = lfpp::circle_average(f->f, {x, y}, r).value;
  });
}

int lfpp_field_n(const lfpp_field* f) { return f ? f->f.n() : 0; }

double lfpp_field_spacing(const lfpp_field* f) { return f ? f->f.spacing() : 0.0; }

double lfpp_field_origin_x(const lfpp_field* f) { return f ? f->f.origin().x : 0.0; }

double lfpp_field_origin_y(const lfpp_field* f) { return f ? f->f.origin().y : 0.0; }

lfpp_status lfpp_field_values(const lfpp_field* f, double* buffer, size_t len) {
  return guarded([&] {
    check_ptr(f, "lfpp_field_values");
    check_ptr(buffer, "lfpp_field_values");
    const auto& v = f->f.values();
    lfpp::require(len == v.size(), lfpp::errc::config,
                  "lfpp_field_values: buffer length must be n*n");
    std::memcpy(buffer, v.data(), v.size() * sizeof(double));
  });
}

void lfpp_field_free(lfpp_field* f) { delete f; }

/* ---- weights ---- */

lfpp_status lfpp_weights_build(const lfpp_field* mollified, double xi, lfpp_weights** out) {
  return guarded([&] {
    check_ptr(mollified, "lfpp_weights_build");
    check_ptr(out, "lfpp_weights_build");
    *out = new lfpp_weights{lfpp::build_weights(mollified->f, xi)};
  });
}

int lfpp_weights_n(const lfpp_weights* w) { return w ? w->w.n() : 0; }

void lfpp_weights_free(lfpp_weights* w) { delete w; }

/* ---- masks ---- */

lfpp_status lfpp_mask_create(int n, int filled, lfpp_mask** out) {
  return guarded([&] {
    check_ptr(out, "lfpp_mask_create");
    lfpp::require(n >= 2, lfpp::errc::config, "lfpp_mask_create: n must be >= 2");
    *out = new lfpp_mask{lfpp::region_mask(n, filled != 0)};
  });
}

lfpp_status lfpp_mask_set(lfpp_mask* m, int i, int j, int on) {
  return guarded([&] {
    check_ptr(m, "lfpp_mask_set");
    int n = m->m.n();
    lfpp::require(i >= 0 && i < n && j >= 0 && j < n, lfpp::errc::domain,
                  "lfpp_mask_set: index out of range");
    m->m.set(i, j, on != 0);
  });
}

lfpp_status lfpp_mask_test(const lfpp_mask* m, int i, int j, int* out_on) {
  return guarded([&] {
    check_ptr(m, "lfpp_mask_test");
    check_ptr(out_on, "lfpp_mask_test");
    int n = m->m.n();
    lfpp::require(i >= 0 && i < n && j >= 0 && j < n, lfpp::errc::domain,
                  "lfpp_mask_test: index out of range");
    *out_on = m->m.test(i, j) ? 1 : 0;
  });
}

void lfpp_mask_free(lfpp_mask* m) { delete m; }

/* ---- metric ---- */

lfpp_status lfpp_distance(const lfpp_weights* w, const uint32_t* sources, size_t n_sources,
                          const uint32_t* targets, size_t n_targets, const lfpp_mask* mask,
                          double* out_distance) {
  return guarded([&] {
    check_ptr(w, "lfpp_distance");
    check_ptr(out_distance, "lfpp_distance");
    auto src = copy_ids(sources, n_sources, "lfpp_distance sources");
    auto tgt = copy_ids(targets, n_targets, "lfpp_distance targets");
    auto res = lfpp::grid_distance(w->w, src, tgt, mask ? &mask->m : nullptr);
    *out_distance = res.distance;
  });
}

lfpp_status lfpp_metric_ball(const lfpp_weights* w, uint32_t center, double radius,
                             const lfpp_mask* mask, lfpp_mask** out_ball) {
  return guarded([&] {
    check_ptr(w, "lfpp_metric_ball");
    check_ptr(mask, "lfpp_metric_ball");
    check_ptr(out_ball, "lfpp_metric_ball");
    *out_ball = new lfpp_mask{lfpp::metric_ball(w->w, center, radius, mask->m)};
  });
}

lfpp_status lfpp_complement_components(const lfpp_mask* ball, const lfpp_mask* window,
                                       int* out_count) {
  return guarded([&] {
    check_ptr(ball, "lfpp_complement_components");
    check_ptr(window, "lfpp_complement_components");
    check_ptr(out_count, "lfpp_complement_components");
    *out_count = lfpp::complement_components(ball->m, window->m);
  });
}

/* ---- closed forms ---- */

lfpp_status lfpp_kpz_f(double x, double xi, double Q, double* out_value) {
  return guarded([&] {
    check_ptr(out_value, "lfpp_kpz_f");
    *out_value = lfpp::kpz_f(x, xi, Q);
  });
}

lfpp_status lfpp_convert_params(const char* which, double value, double* out_c, double* out_Q,
                                int* out_has_gamma, double* out_gamma) {
  return guarded([&] {
    check_ptr(which, "lfpp_convert_params");
    lfpp::param_triple t;
    std::string key(which);
    if (key == "c")
      t = lfpp::params_from_c(value);
    else if (key == "Q")
      t = lfpp::params_from_Q(value);
    else if (key == "gamma")
      t = lfpp::params_from_gamma(value);
    else
      lfpp::fail(lfpp::errc::config, "lfpp_convert_params: which must be c, Q, or gamma");
    if (out_c) *out_c = t.c;
    if (out_Q) *out_Q = t.Q;
    if (out_has_gamma) *out_has_gamma = t.has_gamma ? 1 : 0;
    if (out_gamma) *out_gamma = t.has_gamma ? t.gamma : 0.0;
  });
}

/* ---- experiment driver ---- */

lfpp_status lfpp_run(const char* command, const char* config_path, const char* out_dir,
                     int has_seed, uint64_t seed, int threads, int replicas) {
  return guarded([&] {
    check_ptr(command, "lfpp_run");
    check_ptr(out_dir, "lfpp_run");
    lfpp::experiment_config cfg;
    if (config_path != nullptr && config_path[0] != '\0') cfg = lfpp::load_config(config_path);
    if (has_seed) cfg.master_seed = seed;
    if (threads >= 0) cfg.threads = threads;
    if (replicas > 0) cfg.replicas = replicas;
    lfpp::run_command(command, cfg, out_dir);
  });
}

}  // extern "C"
