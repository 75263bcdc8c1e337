/* SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
 * SPDX-License-Identifier: Apache-2.0
 */

/*
 * C interface to the irlspos library: robust TDoA positioning and the
 * LS-versus-IRLS Monte-Carlo benchmark. Every function that can fail returns
 * an irlspos_status; the message of the most recent failure on the calling
 * thread is available from irlspos_last_error().
 */

#ifndef IRLSPOS_H
#define IRLSPOS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IRLSPOS_BUILDING_LIBRARY)
#    define IRLSPOS_API __declspec(dllexport)
#  else
#    define IRLSPOS_API __declspec(dllimport)
#  endif
#else
#  define IRLSPOS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irlspos_status {
  IRLSPOS_OK = 0,
  IRLSPOS_ERR_INVALID_ARGUMENT = 1,
  IRLSPOS_ERR_CONFIG = 2,
  IRLSPOS_ERR_UNDERDETERMINED = 3,
  IRLSPOS_ERR_GEOMETRY = 4,
  IRLSPOS_ERR_DEGENERATE = 5,
  IRLSPOS_ERR_IO = 6,
  IRLSPOS_ERR_INTERNAL = 7
} irlspos_status;

typedef enum irlspos_method { IRLSPOS_METHOD_LS = 0, IRLSPOS_METHOD_IRLS = 1 } irlspos_method;

typedef struct irlspos_scenario irlspos_scenario;
typedef struct irlspos_batch irlspos_batch;

typedef struct irlspos_station {
  int id;
  double x;
  double y;
} irlspos_station;

typedef struct irlspos_scenario_info {
  size_t station_count;
  size_t poi_count;
  int trials_per_poi;
  uint64_t root_seed;
  double bandwidth_hz;
  double carrier_frequency_hz;
  double nlos_probability;
  double noise_std_m;
  int ls_reference_id;
} irlspos_scenario_info;

typedef struct irlspos_summary {
  size_t count;
  size_t failures;
  double mean_error_m;
  double p90_error_m;
} irlspos_summary;

typedef struct irlspos_params {
  int ls_max_iterations;
  double ls_step_tolerance_m;
  double u_max_m;
  double epsilon_m;
  int irls_max_iterations;
} irlspos_params;

typedef struct irlspos_fix {
  double x;
  double y;
  int iterations;
  int converged;
  int degenerate_weights;
  double final_step_m;
} irlspos_fix;

IRLSPOS_API const char* irlspos_version(void);

/* Message of the last failed call on this thread; empty if none. */
IRLSPOS_API const char* irlspos_last_error(void);

IRLSPOS_API const char* irlspos_status_name(irlspos_status status);

IRLSPOS_API size_t irlspos_preset_count(void);
/* NULL when index is out of range. */
IRLSPOS_API const char* irlspos_preset_name(size_t index);
/* JSON source of a preset. Valid until the next call on this thread. */
IRLSPOS_API irlspos_status irlspos_preset_text(const char* name, const char** text);

IRLSPOS_API irlspos_status irlspos_scenario_load(const char* path, irlspos_scenario** out);
IRLSPOS_API irlspos_status irlspos_scenario_from_preset(const char* name,
                                                        irlspos_scenario** out);
IRLSPOS_API irlspos_status irlspos_scenario_from_json(const char* json_text,
                                                      irlspos_scenario** out);
IRLSPOS_API irlspos_status irlspos_scenario_set_seed(irlspos_scenario* scenario, uint64_t seed);
IRLSPOS_API irlspos_status irlspos_scenario_set_trials(irlspos_scenario* scenario,
                                                       int trials_per_poi);
IRLSPOS_API irlspos_status irlspos_scenario_info_get(const irlspos_scenario* scenario,
                                                     irlspos_scenario_info* out);
IRLSPOS_API void irlspos_scenario_free(irlspos_scenario* scenario);

IRLSPOS_API irlspos_status irlspos_run_batch(const irlspos_scenario* scenario,
                                             irlspos_batch** out);
IRLSPOS_API irlspos_status irlspos_batch_summary(const irlspos_batch* batch,
                                                 irlspos_method method, irlspos_summary* out);
IRLSPOS_API irlspos_status irlspos_batch_export(const irlspos_batch* batch, const char* out_dir);
IRLSPOS_API void irlspos_batch_free(irlspos_batch* batch);

/* Defaults used when params is NULL. */
IRLSPOS_API void irlspos_params_default(irlspos_params* out);

/*
 * One IRLS fix from first-arrival times. arrival_times_s[i] belongs to
 * stations[i] and includes that station's slot offset in a schedule where
 * stations transmit in ascending id order, schedule_period_s apart.
 * weights_out, when not NULL, receives one normalized weight per station in
 * the order of `stations`.
 */
IRLSPOS_API irlspos_status irlspos_locate(const irlspos_station* stations, size_t count,
                                          const double* arrival_times_s,
                                          double schedule_period_s, const irlspos_params* params,
                                          irlspos_fix* out, double* weights_out);

/* Single fixed-reference least-squares fix, same input convention. */
IRLSPOS_API irlspos_status irlspos_locate_ls(const irlspos_station* stations, size_t count,
                                             const double* arrival_times_s,
                                             double schedule_period_s, int reference_id,
                                             const irlspos_params* params, irlspos_fix* out);

/* Andrews sine weight; returns -1 and sets the last error for u < 0 or u_max <= 0. */
IRLSPOS_API double irlspos_andrews_weight(double u, double u_max);

#ifdef __cplusplus
}
#endif

#endif /* IRLSPOS_H */
