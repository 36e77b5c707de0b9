/* Copyright 2026 The rmtlab Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to rmtlab. All handles are opaque; every fallible call returns
 * an rmt_status and leaves a thread-local message for rmt_last_error().
 * Strings returned through char** must be released with rmt_string_free.
 */
#ifndef RMTLAB_RMTLAB_H_
#define RMTLAB_RMTLAB_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(RMTLAB_BUILDING_LIBRARY)
#define RMT_API __declspec(dllexport)
#else
#define RMT_API __declspec(dllimport)
#endif
#else
#define RMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmt_status {
  RMT_OK = 0,
  RMT_INVALID_ARGUMENT = 1,
  RMT_NON_CONVERGENCE = 2,
  RMT_SINGULAR_MATRIX = 3,
  RMT_DEGENERATE_LAW = 4,
  RMT_ZERO_ATOM = 5,
  RMT_POLE_HIT = 6,
  RMT_NO_CONVERGENCE = 7,
  RMT_BRANCH_VIOLATION = 8,
  RMT_MASS_DEFICIT = 9,
  RMT_INSUFFICIENT_GRID = 10,
  RMT_PIPELINE_FAILURE = 11,
  RMT_HYPOTHESIS_VIOLATION = 12,
  RMT_CONFIG_ERROR = 13,
  RMT_IO_ERROR = 14,
  RMT_INTERNAL_ERROR = 15
} rmt_status;

typedef struct rmt_config rmt_config;
typedef struct rmt_report rmt_report;

typedef struct rmt_criterion {
  const char* name; /* owned by the report */
  const char* op;   /* "<=", "<", ">=" or "in" */
  double value;
  double threshold;
  double threshold_hi; /* upper bound when op is "in" */
  int passed;
} rmt_criterion;

RMT_API const char* rmt_version(void);
RMT_API const char* rmt_status_string(rmt_status status);
/* Message of the last failed call on this thread ("" if none). */
RMT_API const char* rmt_last_error(void);
RMT_API void rmt_string_free(char* text);

RMT_API size_t rmt_experiment_count(void);
RMT_API const char* rmt_experiment_name(size_t index);

/* Accepted configuration keys (long flag names without dashes). */
RMT_API size_t rmt_config_key_count(void);
RMT_API const char* rmt_config_key_name(size_t index);

/* Creates a configuration holding the defaults of `experiment`. */
RMT_API rmt_status rmt_config_create(const char* experiment, rmt_config** out);
RMT_API void rmt_config_destroy(rmt_config* config);
/* key is a long flag name without dashes, e.g. "n", "grid", "ds-tol". */
RMT_API rmt_status rmt_config_set(rmt_config* config, const char* key, const char* value);
RMT_API rmt_status rmt_config_load_file(rmt_config* config, const char* path);
/* Normalised key=value lines of the effective configuration. */
RMT_API rmt_status rmt_config_echo(const rmt_config* config, char** out);

/* Runs the experiment; writes artifacts when "out" is set. */
RMT_API rmt_status rmt_run(const rmt_config* config, rmt_report** out);
RMT_API void rmt_report_destroy(rmt_report* report);
RMT_API int rmt_report_passed(const rmt_report* report);
RMT_API size_t rmt_report_criterion_count(const rmt_report* report);
RMT_API rmt_status rmt_report_criterion(const rmt_report* report, size_t index,
                                        rmt_criterion* out);
RMT_API rmt_status rmt_report_statistic(const rmt_report* report, const char* name,
                                        double* value);
RMT_API size_t rmt_report_note_count(const rmt_report* report);
RMT_API const char* rmt_report_note(const rmt_report* report, size_t index);
RMT_API double rmt_report_elapsed(const rmt_report* report);
RMT_API rmt_status rmt_report_json(const rmt_report* report, int include_runtime, char** out);
RMT_API rmt_status rmt_report_write(rmt_report* report, const char* dir, const char* format);

/* Damped fixed point for the singular law with the given atoms at
 * w = w_re + i w_im. form is "weighted" or "squared". */
RMT_API rmt_status rmt_ds_fixed_point(const double* atoms, size_t count, double w_re,
                                      double w_im, const char* form, double damping, double tol,
                                      int max_iter, double* m_re, double* m_im, int* iterations);

#ifdef __cplusplus
}
#endif

#endif /* RMTLAB_RMTLAB_H_ */
