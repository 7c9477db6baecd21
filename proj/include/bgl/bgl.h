// Copyright 2026 The BGL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the belief-learning toolkit. Every handle is opaque and
 * owned by the caller, who releases it with the matching *_free function.
 * Functions return BGL_OK or an error status; the message of the last
 * failure on the calling thread is available from bgl_last_error().
 * Strings returned by accessors stay valid until the owning handle is
 * freed. */

#ifndef BGL_BGL_H_
#define BGL_BGL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BGL_API __declspec(dllexport)
#else
#define BGL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bgl_status {
  BGL_OK = 0,
  BGL_ERR_CONFIG = 1,
  BGL_ERR_DOMAIN = 2,
  BGL_ERR_NUMERIC = 3,
  BGL_ERR_SOLVER = 4,
  BGL_ERR_IMPOSSIBLE_EVIDENCE = 5,
  BGL_ERR_INVARIANT = 6,
  BGL_ERR_UNDEFINED_RATE = 7,
  BGL_ERR_IO = 8,
  BGL_ERR_INVALID_ARGUMENT = 9,
  BGL_ERR_INTERNAL = 10
} bgl_status;

typedef struct bgl_game bgl_game;
typedef struct bgl_config bgl_config;
typedef struct bgl_trajectory bgl_trajectory;
typedef struct bgl_report bgl_report;

BGL_API const char* bgl_version(void);
BGL_API const char* bgl_status_name(bgl_status status);
/* Validation failures (bad config, arguments, domain, I/O) versus
 * numeric or solver failures. */
BGL_API int bgl_status_is_validation(bgl_status status);

BGL_API const char* bgl_last_error(void);
/* Offending field and 1-based line of the last configuration error; ""
 * and 0 when unknown. */
BGL_API const char* bgl_last_error_field(void);
BGL_API int bgl_last_error_line(void);

/* ---- games ---- */

/* name: "cournot-ex1", "zero-sum-ex2" or "investment-ex3". */
BGL_API bgl_status bgl_game_builtin(const char* name, double sigma,
                                    bgl_game** out);
BGL_API bgl_status bgl_game_from_config(const bgl_config* config,
                                        bgl_game** out);
BGL_API void bgl_game_free(bgl_game* game);

BGL_API size_t bgl_game_num_players(const bgl_game* game);
BGL_API size_t bgl_game_num_params(const bgl_game* game);
BGL_API size_t bgl_game_true_index(const bgl_game* game);
/* NULL when s is out of range. */
BGL_API const char* bgl_game_param_id(const bgl_game* game, size_t s);
BGL_API bgl_status bgl_game_param_index(const bgl_game* game, const char* id,
                                        size_t* out);

BGL_API bgl_status bgl_expected_utility(const bgl_game* game,
                                        const double* theta, size_t n_theta,
                                        size_t player, const double* q,
                                        size_t n_q, double* out);
BGL_API bgl_status bgl_kl_divergence(const bgl_game* game, size_t s_from,
                                     size_t s_to, const double* q, size_t n_q,
                                     double* out);

/* ---- run configurations ---- */

BGL_API bgl_status bgl_config_load(const char* path, bgl_config** out);
BGL_API bgl_status bgl_config_parse(const char* text, bgl_config** out);
/* Configuration reproducing a builtin fixture. */
BGL_API bgl_status bgl_config_fixture(const char* name, double sigma,
                                      bgl_config** out);
BGL_API bgl_status bgl_config_save(const bgl_config* config,
                                   const char* path);
/* YAML form of the configuration. */
BGL_API const char* bgl_config_text(bgl_config* config);
BGL_API int bgl_config_equal(const bgl_config* a, const bgl_config* b);
BGL_API bgl_status bgl_config_set_seed(bgl_config* config, uint64_t seed);
BGL_API bgl_status bgl_config_set_horizon(bgl_config* config, size_t horizon);
BGL_API bgl_status bgl_config_set_record_every(bgl_config* config, size_t n);
/* kind: "every_stage", "every_n" (param = n) or "two_timescale"
 * (param = growth factor). */
BGL_API bgl_status bgl_config_set_schedule(bgl_config* config,
                                           const char* kind, double param);
BGL_API bgl_status bgl_config_set_kl_tol(bgl_config* config, double kl_tol);
/* Output paths from the configuration; "" when unset. */
BGL_API const char* bgl_config_trajectory_path(const bgl_config* config);
BGL_API const char* bgl_config_summary_path(const bgl_config* config);
BGL_API size_t bgl_config_record_every(const bgl_config* config);
BGL_API void bgl_config_free(bgl_config* config);

/* ---- simulation ---- */

/* On a solver or numeric failure mid-run the status is returned and *out
 * still receives the partial trajectory, which the caller must free. */
BGL_API bgl_status bgl_simulate(const bgl_config* config,
                                bgl_trajectory** out);
BGL_API size_t bgl_trajectory_length(const bgl_trajectory* traj);
/* Belief and strategy of the record at `index` (0-based, stage index+1). */
BGL_API bgl_status bgl_trajectory_state(const bgl_trajectory* traj,
                                        size_t index, double* theta,
                                        size_t n_theta, double* q, size_t n_q);
BGL_API bgl_status bgl_trajectory_write(const bgl_trajectory* traj,
                                        const char* path,
                                        size_t record_every);
/* Final state, detected convergence point with its fixed-point check, and
 * decay rates of distinguishable parameters. */
BGL_API bgl_status bgl_trajectory_summary(const bgl_trajectory* traj,
                                          bgl_report** out);
BGL_API bgl_status bgl_trajectory_rate(const bgl_trajectory* traj,
                                       const char* param_id,
                                       double tail_fraction, bgl_report** out);
BGL_API void bgl_trajectory_free(bgl_trajectory* traj);

/* Runs the configuration once per seed (in parallel) and groups final
 * states closer than cluster_tol. When trajectory_path is non-NULL each run
 * writes its own file: "{seed}" in the path is replaced by the seed, or
 * "-seed<N>" is inserted before the extension. */
BGL_API bgl_status bgl_sweep(const bgl_config* config, const uint64_t* seeds,
                             size_t n_seeds, double cluster_tol,
                             const char* trajectory_path, bgl_report** out);
/* Decay-rate regression per seed; seeds whose run ends where the parameter
 * is indistinguishable are listed as skipped. */
BGL_API bgl_status bgl_rate_sweep(const bgl_config* config,
                                  const uint64_t* seeds, size_t n_seeds,
                                  const char* param_id, double tail_fraction,
                                  bgl_report** out);

/* ---- analysis ---- */

BGL_API bgl_status bgl_equilibrium(const bgl_game* game, const double* theta,
                                   size_t n_theta, double tol, int starts,
                                   uint64_t seed, bgl_report** out);
BGL_API bgl_status bgl_verify_fixed_point(const bgl_game* game,
                                          const double* theta, size_t n_theta,
                                          const double* q, size_t n_q,
                                          double kl_tol, double br_tol,
                                          bgl_report** out);
BGL_API bgl_status bgl_martingale_check(const bgl_game* game,
                                        const double* theta, size_t n_theta,
                                        const double* q, size_t n_q,
                                        size_t n_samples, uint64_t seed,
                                        bgl_report** out);
/* Runs every grid combination of a stability manifest (YAML). */
BGL_API bgl_status bgl_stability_local(const char* manifest_path,
                                       bgl_report** out);
BGL_API bgl_status bgl_stability_global(const bgl_game* game,
                                        size_t resolution, double kl_tol,
                                        bgl_report** out);
BGL_API bgl_status bgl_thresholds(const double* theta, size_t n_theta,
                                  size_t true_index, double epsilon_hat,
                                  double gamma, bgl_report** out);
BGL_API bgl_status bgl_complete_learning(const bgl_game* game,
                                         const double* theta, size_t n_theta,
                                         const double* q, size_t n_q,
                                         double xi, size_t n_probe,
                                         uint64_t seed, double kl_tol,
                                         bgl_report** out);
/* Frozen-belief convergence of one update rule from random starts. */
BGL_API bgl_status bgl_static_check(const bgl_game* game, const char* rule,
                                    const char* step_kind, double step_scale,
                                    const double* theta, size_t n_theta,
                                    size_t starts, size_t max_steps,
                                    double tol, uint64_t seed,
                                    bgl_report** out);
BGL_API bgl_status bgl_examples_list(bgl_report** out);

/* ---- reports ---- */

BGL_API const char* bgl_report_json(const bgl_report* report);
BGL_API const char* bgl_report_text(const bgl_report* report);
/* 1 pass, 0 fail, -1 when the report carries no verdict. */
BGL_API int bgl_report_verdict(const bgl_report* report);
BGL_API void bgl_report_free(bgl_report* report);

#ifdef __cplusplus
}
#endif

#endif /* BGL_BGL_H_ */
