// Copyright 2026 The nlshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLSHARE_NLSHARE_H
#define NLSHARE_NLSHARE_H

/* C interface to the nlshare library.
 *
 * Every fallible function returns an nls_status; on failure the message is
 * available from nls_last_error() on the same thread until the next call.
 * Objects are opaque handles released with their *_destroy function.
 * Rounds are 1-based. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NLSHARE_BUILDING_LIBRARY)
#    define NLS_API __declspec(dllexport)
#  else
#    define NLS_API __declspec(dllimport)
#  endif
#else
#  define NLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nls_status {
  NLS_OK = 0,
  NLS_ERR_DOMAIN = 1,
  NLS_ERR_CONFIG = 2,
  NLS_ERR_SIZE = 3,
  NLS_ERR_STRUCTURE = 4,
  NLS_ERR_IO = 5,
  /* Output was written but the closed form is outside its regime. */
  NLS_OUT_OF_REGIME = 6,
  NLS_ERR_NULL_ARGUMENT = 7,
  NLS_ERR_INTERNAL = 99
} nls_status;

typedef enum nls_noise_kind {
  NLS_NOISE_NONE = 0,
  NLS_NOISE_DEPOLARIZING = 1,
  NLS_NOISE_DAMPING = 2
} nls_noise_kind;

typedef enum nls_convention {
  NLS_DELTA_HALF_PI = 0,    /* delta = pi/2 - 2 theta */
  NLS_DELTA_QUARTER_PI = 1, /* delta = pi/4 - 2 theta */
  NLS_DELTA_EXPLICIT = 2
} nls_convention;

typedef struct nls_noise {
  int kind; /* nls_noise_kind */
  double p;
} nls_noise;

typedef struct nls_network {
  int n;
  int m;
  double theta;
  double delta;
  nls_noise noise;
} nls_network;

typedef struct nls_bell_value {
  double s;
  double excess; /* S - 2 without cancellation */
  double scale;
  double i_n;
  double j_n;
  double branch;
  double untouched;
  int in_regime;
  int violates;
} nls_bell_value;

typedef struct nls_oracle_value {
  double s;
  double i_n;
  double j_n;
} nls_oracle_value;

typedef struct nls_sequence nls_sequence;
typedef struct nls_table nls_table;
typedef struct nls_sweep nls_sweep;

NLS_API const char* nls_version(void);
NLS_API const char* nls_last_error(void);
NLS_API const char* nls_status_name(nls_status status);

NLS_API nls_status nls_parse_angle(const char* text, double* out);

NLS_API nls_status nls_concurrence_pure(double theta, double* out);
NLS_API nls_status nls_threshold_concurrence(int k, double* out);
/* *unbounded is set to 1 (and *rounds to -1) when c == 1. */
NLS_API nls_status nls_max_supported_rounds(double c, int* rounds,
                                            int* unbounded);
NLS_API nls_status nls_convention_delta(double theta, int convention,
                                        double* out);
NLS_API nls_status nls_alpha_lower_bound(int j, double theta, double delta,
                                         double cumprod, nls_noise noise,
                                         double* value, int* feasible,
                                         int* degenerate);
NLS_API nls_status nls_branch_factor(int j, double theta, double delta,
                                     double alpha_j, double cumprod,
                                     nls_noise noise, double* out);
NLS_API nls_status nls_untouched_factor(double theta, double delta,
                                        nls_noise noise, double* out);

NLS_API nls_status nls_sequence_build(double theta, double delta,
                                      double epsilon, double alpha1, int k,
                                      nls_noise noise, nls_sequence** out);
NLS_API nls_status nls_sequence_from_alphas(const double* alphas,
                                            size_t count, nls_sequence** out);
NLS_API int nls_sequence_size(const nls_sequence* seq);
NLS_API nls_status nls_sequence_get(const nls_sequence* seq, int round,
                                    double* alpha, double* cumprod);
NLS_API void nls_sequence_destroy(nls_sequence* seq);

NLS_API nls_status nls_closed_form_s(const nls_network* net,
                                     const nls_sequence* seq, int j,
                                     double tolerance, nls_bell_value* out);
NLS_API nls_status nls_oracle_s(const nls_network* net,
                                const nls_sequence* seq, int j,
                                nls_oracle_value* out);
/* Limited to n <= 3. */
NLS_API nls_status nls_full_tensor_s(const nls_network* net,
                                     const nls_sequence* seq, int j,
                                     nls_oracle_value* out);
NLS_API nls_status nls_max_rounds(double theta, double delta, double epsilon,
                                  double alpha1, nls_noise noise, int j_cap,
                                  double tolerance, int* out);

/* Writes up to `capacity` sharpness values; *count receives the number of
 * feasible rounds. */
NLS_API nls_status nls_unsharp_gammas(double theta, double omega,
                                      double epsilon, int k, double* gammas,
                                      size_t capacity, int* count);
NLS_API nls_status nls_unsharp_s(int j, double theta, double omega,
                                 const double* gammas, size_t count,
                                 double* s, double* excess);

/* ---- tables ---- */

typedef enum nls_cell_type {
  NLS_CELL_EMPTY = 0,
  NLS_CELL_BOOL = 1,
  NLS_CELL_INT = 2,
  NLS_CELL_REAL = 3,
  NLS_CELL_TEXT = 4
} nls_cell_type;

typedef struct nls_cell {
  int type; /* nls_cell_type */
  int64_t integer; /* also used for bool */
  double real;
  const char* text;
} nls_cell;

NLS_API nls_status nls_table_create(const char* const* columns, size_t count,
                                    nls_table** out);
NLS_API nls_status nls_table_append_row(nls_table* table,
                                        const nls_cell* cells, size_t count);
/* Sets metadata[key] to the parsed JSON value. */
NLS_API nls_status nls_table_set_metadata(nls_table* table, const char* key,
                                          const char* json_value);
NLS_API size_t nls_table_rows(const nls_table* table);
/* format is "csv" or "json"; free the result with nls_string_free. */
NLS_API nls_status nls_table_render(const nls_table* table,
                                    const char* format, char** out);
NLS_API nls_status nls_table_write(const nls_table* table, const char* format,
                                   const char* path);
NLS_API void nls_table_destroy(nls_table* table);
NLS_API void nls_string_free(char* text);

/* ---- experiments ---- */

typedef enum nls_sweep_parameter {
  NLS_SWEEP_THETA = 0,
  NLS_SWEEP_DELTA = 1,
  NLS_SWEEP_P = 2,
  NLS_SWEEP_EPSILON = 3,
  NLS_SWEEP_ALPHA1 = 4
} nls_sweep_parameter;

typedef struct nls_axis {
  int parameter; /* nls_sweep_parameter */
  double lo;
  double hi;
  int points;
} nls_axis;

typedef struct nls_sweep_spec {
  nls_axis axis1;
  int has_axis2;
  nls_axis axis2;
  double theta;
  double delta;
  double epsilon;
  double alpha1;
  nls_noise noise;
  int convention; /* nls_convention */
  int round_cap;
  double tolerance;
} nls_sweep_spec;

typedef enum nls_default_sweep {
  NLS_SWEEP_ANGLES = 0,
  NLS_SWEEP_DEPOLARIZING = 1,
  NLS_SWEEP_DAMPING = 2
} nls_default_sweep;

/* Parses "name:lo:hi:points"; lo and hi accept angle expressions. */
NLS_API nls_status nls_parse_axis(const char* text, nls_axis* out);
NLS_API const char* nls_sweep_parameter_name(int parameter);
NLS_API nls_status nls_default_sweep_spec(int which, nls_sweep_spec* out);

NLS_API nls_status nls_sweep_run(const nls_sweep_spec* spec, int threads,
                                 nls_sweep** out);
NLS_API size_t nls_sweep_size(const nls_sweep* sweep);
NLS_API nls_status nls_sweep_cell(const nls_sweep* sweep, size_t index,
                                  double* value1, double* value2,
                                  int* max_rounds);
NLS_API nls_status nls_sweep_table(const nls_sweep* sweep, nls_table** out);
NLS_API nls_status nls_sweep_write_svg(const nls_sweep* sweep,
                                       const char* path);
NLS_API void nls_sweep_destroy(nls_sweep* sweep);

NLS_API nls_status nls_compare_protocols(double theta, double epsilon,
                                         double alpha1, double omega, int k,
                                         double tolerance, nls_table** out);
NLS_API nls_status nls_tradeoff_report(int n_lo, int n_hi, int k_lo, int k_hi,
                                       double epsilon, double alpha1,
                                       double tolerance, nls_table** out,
                                       int* frontier_ok);
NLS_API nls_status nls_verify(uint64_t seed, int samples, nls_table** out,
                              int* passed);

#ifdef __cplusplus
}
#endif

#endif /* NLSHARE_NLSHARE_H */
