/* C interface to the LFPP laboratory: whole-plane GFF samples on a lattice,
 * exponentially weighted first-passage metrics, and the experiment driver.
 * All functions return lfpp_status; lfpp_last_error() describes the latest
 * failure on the calling thread. Handles are opaque and freed by the
 * matching *_free call. */
#ifndef LFPP_H
#define LFPP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LFPP_API __declspec(dllexport)
#else
#define LFPP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lfpp_status {
  LFPP_OK = 0,
  LFPP_ERR_CONFIG = 1,     /* bad parameters or config document */
  LFPP_ERR_DOMAIN = 2,     /* geometry leaves the sampled domain */
  LFPP_ERR_RESOLUTION = 3, /* request unresolvable at this lattice spacing */
  LFPP_ERR_IO = 4,         /* file system or format failure */
  LFPP_ERR_INTERNAL = 5
} lfpp_status;

typedef struct lfpp_field lfpp_field;     /* scalar lattice field */
typedef struct lfpp_weights lfpp_weights; /* e^{xi h} edge-weight grid */
typedef struct lfpp_mask lfpp_mask;       /* vertex subset of the lattice */

LFPP_API const char* lfpp_version(void);
LFPP_API const char* lfpp_last_error(void);

/* ---- fields ---- */

/* Approximate whole-plane GFF on an n x n lattice (n a power of two >= 64)
 * spanning physical side L, normalized so the unit circle average at the
 * center vanishes. */
LFPP_API lfpp_status lfpp_field_sample(int n, double L, uint64_t seed, lfpp_field** out);
LFPP_API lfpp_status lfpp_field_load(const char* path, lfpp_field** out);
LFPP_API lfpp_status lfpp_field_save(const lfpp_field* f, const char* path);
/* Heat-kernel mollification at scale eps >= 2 * spacing. */
LFPP_API lfpp_status lfpp_field_mollify(const lfpp_field* f, double eps, lfpp_field** out);
LFPP_API lfpp_status lfpp_field_add(const lfpp_field* a, const lfpp_field* b, lfpp_field** out);
LFPP_API lfpp_status lfpp_field_circle_average(const lfpp_field* f, double x, double y, double r,
                                               double* out_value);
LFPP_API int lfpp_field_n(const lfpp_field* f);
LFPP_API double lfpp_field_spacing(const lfpp_field* f);
LFPP_API double lfpp_field_origin_x(const lfpp_field* f);
LFPP_API double lfpp_field_origin_y(const lfpp_field* f);
/* Copies the n*n row-major values; len must be exactly n*n. */
LFPP_API lfpp_status lfpp_field_values(const lfpp_field* f, double* buffer, size_t len);
LFPP_API void lfpp_field_free(lfpp_field* f);

/* ---- weights ---- */

LFPP_API lfpp_status lfpp_weights_build(const lfpp_field* mollified, double xi,
                                        lfpp_weights** out);
LFPP_API int lfpp_weights_n(const lfpp_weights* w);
LFPP_API void lfpp_weights_free(lfpp_weights* w);

/* ---- masks ---- */

LFPP_API lfpp_status lfpp_mask_create(int n, int filled, lfpp_mask** out);
LFPP_API lfpp_status lfpp_mask_set(lfpp_mask* m, int i, int j, int on);
LFPP_API lfpp_status lfpp_mask_test(const lfpp_mask* m, int i, int j, int* out_on);
LFPP_API void lfpp_mask_free(lfpp_mask* m);

/* ---- metric ---- */

/* Multi-source/multi-target first-passage distance on the 8-neighbor grid
 * with edge cost spacing * |delta| * (w[u]+w[v])/2; vertex ids are row-major
 * i*n+j. mask NULL means the full lattice. */
LFPP_API lfpp_status lfpp_distance(const lfpp_weights* w, const uint32_t* sources,
                                   size_t n_sources, const uint32_t* targets, size_t n_targets,
                                   const lfpp_mask* mask, double* out_distance);
/* Closed metric ball in the internal metric of the mask. */
LFPP_API lfpp_status lfpp_metric_ball(const lfpp_weights* w, uint32_t center, double radius,
                                      const lfpp_mask* mask, lfpp_mask** out_ball);
/* Number of 4-connected components of window minus ball. */
LFPP_API lfpp_status lfpp_complement_components(const lfpp_mask* ball, const lfpp_mask* window,
                                                int* out_count);

/* ---- closed forms ---- */

/* KPZ relation (Q - sqrt(Q^2 - 2x))/xi on [0,2]; +infinity past Q^2/2. */
LFPP_API lfpp_status lfpp_kpz_f(double x, double xi, double Q, double* out_value);
/* Conventional c/Q/gamma conversions. which is one of "c", "Q", "gamma";
 * *out_has_gamma is 0 when gamma is complex (c > 1). */
LFPP_API lfpp_status lfpp_convert_params(const char* which, double value, double* out_c,
                                         double* out_Q, int* out_has_gamma, double* out_gamma);

/* ---- experiment driver ---- */

/* Loads the JSON config (NULL or empty path: defaults), applies overrides
 * (negative override: keep config value; has_seed 0: keep seed), runs one of
 * sample | distance | exponent | scaling | kpz | thick | ball-topology |
 * tightness | holder, and writes results + manifest into out_dir. */
LFPP_API lfpp_status lfpp_run(const char* command, const char* config_path, const char* out_dir,
                              int has_seed, uint64_t seed, int threads, int replicas);

#ifdef __cplusplus
}
#endif

#endif /* LFPP_H */
