/* shadowcorr - correlated shadow fading synthesis and C/I Monte Carlo engine
 * Copyright (C) 2026 The shadowcorr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 */

#ifndef SHADOWCORR_SHADOWCORR_H
#define SHADOWCORR_SHADOWCORR_H

/*
 * C interface of the shadowcorr shared library.
 *
 * Every fallible function returns an shc_status. On failure the message of
 * the last error raised on the calling thread is available through
 * shc_last_error(); it stays valid until the next failing call on that thread.
 *
 * Objects are opaque handles released with their matching *_free function
 * (NULL is accepted). Strings returned through char** are owned by the
 * caller and released with shc_string_free().
 *
 * Matrices cross the boundary as row-major arrays of doubles.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#if defined(SHADOWCORR_BUILDING)
#define SHC_API __declspec(dllexport)
#else
#define SHC_API __declspec(dllimport)
#endif
#else
#define SHC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum shc_status
{
    SHC_OK = 0,
    SHC_ERR_INVALID_ARGUMENT = 1,
    SHC_ERR_DEGENERATE_GEOMETRY = 2,
    SHC_ERR_INVALID_DISTANCE = 3,
    SHC_ERR_NON_POSITIVE_POWER = 4,
    SHC_ERR_NOT_POSITIVE_SEMIDEFINITE = 5,
    SHC_ERR_DIMENSION_MISMATCH = 6,
    SHC_ERR_WINDOW_TOO_LARGE = 7,
    SHC_ERR_DEGENERATE_ZONE = 8,
    SHC_ERR_ZERO_VARIANCE = 9,
    SHC_ERR_PARSE = 10,
    SHC_ERR_IO = 11,
    SHC_ERR_INTERNAL = 12
} shc_status;

typedef enum shc_table_kind
{
    SHC_TABLE_MEASURED = 0,
    SHC_TABLE_PREDICTED = 1
} shc_table_kind;

typedef enum shc_format
{
    SHC_FORMAT_CSV = 0,
    SHC_FORMAT_JSON = 1,
    SHC_FORMAT_TEXT = 2 /* tables only */
} shc_format;

typedef enum shc_domain
{
    SHC_DOMAIN_LINEAR_POWER = 0,
    SHC_DOMAIN_DECIBEL = 1,
    SHC_DOMAIN_AMPLITUDE = 2
} shc_domain;

typedef struct shc_table shc_table;
typedef struct shc_generator shc_generator;
typedef struct shc_trace shc_trace;
typedef struct shc_extraction shc_extraction;
typedef struct shc_scenario shc_scenario;
typedef struct shc_grid shc_grid;
typedef struct shc_sensitivity shc_sensitivity;

typedef struct shc_pair_geometry
{
    double theta_deg;
    double r_db;
    double d1;
    double d2;
} shc_pair_geometry;

typedef struct shc_cell
{
    double x;
    double y;
    double mean_db; /* NaN when the cell failed */
    double std_db;  /* NaN when the cell failed */
    uint64_t replicas;
    int failed;
} shc_cell;

/* ---- library ---------------------------------------------------------- */

SHC_API const char *shc_version(void);
SHC_API const char *shc_last_error(void);
SHC_API const char *shc_status_name(shc_status status);
SHC_API void shc_string_free(char *s);
SHC_API uint64_t shc_default_seed(void);

/* ---- geometry / propagation ------------------------------------------ */

SHC_API shc_status shc_pair_geometry_compute(double mobile_x, double mobile_y, double bs1_x, double bs1_y,
                                             double bs2_x, double bs2_y, shc_pair_geometry *out);
SHC_API shc_status shc_path_loss(double a, double b, double distance_m, double *out_db);
SHC_API double shc_db_to_linear(double x_db);
SHC_API shc_status shc_linear_to_db(double x, double *out_db);

/* ---- correlation ------------------------------------------------------ */

SHC_API shc_status shc_table_builtin(shc_table_kind kind, shc_table **out);
SHC_API shc_status shc_table_from_json(const char *json, shc_table **out);
SHC_API void shc_table_free(shc_table *table);
SHC_API shc_status shc_table_dims(const shc_table *table, size_t *rdb_bins, size_t *theta_bins);
SHC_API shc_status shc_table_alpha(const shc_table *table, size_t rdb_bin, size_t theta_bin, double *out);
SHC_API shc_status shc_table_lookup(const shc_table *table, double theta_deg, double r_db, double *out);
SHC_API shc_status shc_table_format(const shc_table *table, shc_format format, char **out);

/* stations_xy holds n (x, y) pairs; out_matrix receives n*n entries. */
SHC_API shc_status shc_build_matrix(const shc_table *table, double mobile_x, double mobile_y,
                                    const double *stations_xy, size_t n, double *out_matrix);
/* repaired may be NULL. */
SHC_API shc_status shc_ensure_psd(const double *matrix, size_t n, double eigen_floor, double *out_matrix,
                                  int *repaired);
SHC_API shc_status shc_min_eigenvalue(const double *matrix, size_t n, double *out);
SHC_API shc_status shc_cholesky(const double *matrix, size_t n, double *out_lower);

/* ---- shadowing -------------------------------------------------------- */

SHC_API shc_status shc_beta_from_decorrelation(double spacing_m, double decorrelation_distance_m, double *out);

/* lower holds an n_links x n_links lower-triangular factor. */
SHC_API shc_status shc_generator_create(double sigma_db, double beta, const double *lower, size_t n_links,
                                        uint64_t seed, shc_generator **out);
SHC_API void shc_generator_free(shc_generator *gen);
SHC_API shc_status shc_generator_step(shc_generator *gen, double *out_sample);
SHC_API shc_status shc_generator_current(const shc_generator *gen, double *out_sample);
SHC_API uint64_t shc_generator_steps(const shc_generator *gen);

/* out receives n_links x n_steps (resp. n_draws) entries, row-major by link. */
SHC_API shc_status shc_generate(double sigma_db, double beta, const double *lower, size_t n_links, uint64_t seed,
                                size_t n_steps, double *out);
SHC_API shc_status shc_draw_static(double sigma_db, const double *lower, size_t n_links, uint64_t seed,
                                   size_t n_draws, double *out);
/* samples is n_links x n_steps as produced by shc_generate. */
SHC_API shc_status shc_samples_format(const double *samples, size_t n_links, size_t n_steps, shc_format format,
                                      char **out);

/* ---- extraction ------------------------------------------------------- */

SHC_API shc_status shc_trace_from_csv(const char *csv, double spacing_m, shc_trace **out);
SHC_API shc_status shc_trace_create(const double *x, const double *y, const double *distance_m,
                                    const double *level_db, size_t n, double spacing_m, shc_trace **out);
SHC_API void shc_trace_free(shc_trace *trace);
SHC_API size_t shc_trace_size(const shc_trace *trace);
SHC_API shc_status shc_trace_levels(const shc_trace *trace, double *out_levels);
SHC_API shc_status shc_remove_fast_fading(const shc_trace *trace, double window_m, shc_domain domain,
                                          shc_trace **out);

/* zone_labels holds one label per sample, or is NULL for a single zone. */
SHC_API shc_status shc_extract_regression(const shc_trace *trace, const uint32_t *zone_labels, size_t n_labels,
                                          shc_extraction **out);
SHC_API shc_status shc_extract_sliding(const shc_trace *trace, double window_m, shc_extraction **out);
SHC_API void shc_extraction_free(shc_extraction *result);
SHC_API size_t shc_extraction_size(const shc_extraction *result);
SHC_API double shc_extraction_std(const shc_extraction *result);
SHC_API shc_status shc_extraction_shadowing(const shc_extraction *result, double *out);
SHC_API size_t shc_extraction_zone_count(const shc_extraction *result);
SHC_API shc_status shc_extraction_zone_fit(const shc_extraction *result, size_t zone, double *a, double *b);
SHC_API shc_status shc_extraction_format(const shc_extraction *result, shc_format format, char **out);
SHC_API shc_status shc_zone_labels_from_csv(const char *csv, uint32_t **out_labels, size_t *out_n);
SHC_API void shc_labels_free(uint32_t *labels);

SHC_API shc_status shc_cross_correlation(const double *a, const double *b, size_t n, double *out);

/* ---- C/I Monte Carlo -------------------------------------------------- */

SHC_API shc_status shc_scenario_from_json(const char *json, shc_scenario **out);
/* On an unknown name the error message lists the valid presets. */
SHC_API shc_status shc_scenario_preset(const char *name, shc_scenario **out);
SHC_API void shc_scenario_free(shc_scenario *scenario);
SHC_API shc_status shc_scenario_clone(const shc_scenario *scenario, shc_scenario **out);
SHC_API shc_status shc_scenario_set_sigma(shc_scenario *scenario, double sigma_db);
SHC_API shc_status shc_scenario_set_replicas(shc_scenario *scenario, uint64_t replicas);
SHC_API shc_status shc_scenario_set_seed(shc_scenario *scenario, uint64_t seed);
SHC_API shc_status shc_scenario_set_beta(shc_scenario *scenario, double beta);
/* table NULL: uncorrelated links. The table is copied. */
SHC_API shc_status shc_scenario_set_table(shc_scenario *scenario, const shc_table *table);
SHC_API double shc_scenario_sigma(const shc_scenario *scenario);
SHC_API uint64_t shc_scenario_seed(const shc_scenario *scenario);
SHC_API size_t shc_scenario_links(const shc_scenario *scenario);

/* shadow_db holds shc_scenario_links() values ordered [source, interferers...]. */
SHC_API shc_status shc_ci_sample(const shc_scenario *scenario, double x, double y, const double *shadow_db,
                                 double *out_db);
SHC_API shc_status shc_run_point(const shc_scenario *scenario, double x, double y, unsigned threads,
                                 shc_cell *out);
/* threads == 0: hardware concurrency. Results do not depend on the thread count. */
SHC_API shc_status shc_run_grid(const shc_scenario *scenario, unsigned threads, shc_grid **out);
SHC_API void shc_grid_free(shc_grid *grid);
SHC_API size_t shc_grid_size(const shc_grid *grid);
SHC_API shc_status shc_grid_cell(const shc_grid *grid, size_t index, shc_cell *out);
/* NULL when the cell succeeded; owned by the grid. */
SHC_API const char *shc_grid_cell_error(const shc_grid *grid, size_t index);
SHC_API shc_status shc_grid_format(const shc_grid *grid, shc_format format, char **out);

SHC_API shc_status shc_sensitivity_sigma(const shc_scenario *scenario, const double *sigmas_db, size_t n_sigmas,
                                         unsigned threads, shc_sensitivity **out);
SHC_API void shc_sensitivity_free(shc_sensitivity *report);
SHC_API shc_status shc_sensitivity_delta(const shc_sensitivity *report, size_t sigma_index, size_t cell,
                                         double *delta_mean_db, double *delta_std_db);
SHC_API shc_status shc_sensitivity_format(const shc_sensitivity *report, shc_format format, char **out);

#ifdef __cplusplus
}
#endif

#endif
