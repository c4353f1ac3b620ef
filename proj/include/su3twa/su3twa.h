/*
 * Copyright 2026 The su3twa Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the su3twa simulation engine. All objects are opaque
 * handles owned by the caller and released with the matching *_free call.
 * Every function returns a status code; on failure a message describing the
 * error is available from su3twa_last_error() on the calling thread.
 */
#ifndef SU3TWA_SU3TWA_H
#define SU3TWA_SU3TWA_H

#include <stddef.h>
#include <stdint.h>

#if defined(SU3TWA_BUILDING_LIBRARY)
#define SU3TWA_API __attribute__((visibility("default")))
#else
#define SU3TWA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum su3twa_status {
  SU3TWA_OK = 0,
  SU3TWA_ERR_CONFIG = 1,
  SU3TWA_ERR_RUNTIME = 2,
  SU3TWA_ERR_VALIDATION = 3,
  SU3TWA_ERR_INVALID_ARGUMENT = 4
} su3twa_status;

typedef struct su3twa_config su3twa_config;
typedef struct su3twa_result su3twa_result;

SU3TWA_API const char* su3twa_version(void);

/* Message for the last failed call on this thread; "" if none. */
SU3TWA_API const char* su3twa_last_error(void);

SU3TWA_API su3twa_status su3twa_config_parse(const char* text, su3twa_config** out);

/* Reads a config file; a CSV written by su3twa_result_write_csv is accepted
 * as well and yields the config that produced it. */
SU3TWA_API su3twa_status su3twa_config_load(const char* path, su3twa_config** out);

/* Creates a config containing only `experiment = name` and defaults. */
SU3TWA_API su3twa_status su3twa_config_new(const char* experiment, su3twa_config** out);

/* Overrides one key, with the same validation as the parser. */
SU3TWA_API su3twa_status su3twa_config_set(su3twa_config* cfg, const char* key,
                                           const char* value);

/* Copies the canonical text form into buf (NUL-terminated, truncated to cap).
 * *needed receives the full length including the terminator. */
SU3TWA_API su3twa_status su3twa_config_render(const su3twa_config* cfg, char* buf,
                                              size_t cap, size_t* needed);

/* Output path named in the config ("" if none). Valid while cfg lives. */
SU3TWA_API const char* su3twa_config_output(const su3twa_config* cfg);

SU3TWA_API void su3twa_config_free(su3twa_config* cfg);

SU3TWA_API su3twa_status su3twa_run(const su3twa_config* cfg, su3twa_result** out);

SU3TWA_API size_t su3twa_result_num_times(const su3twa_result* r);
SU3TWA_API size_t su3twa_result_num_series(const su3twa_result* r);
/* Series name such as "su3_sx"; NULL when out of range. */
SU3TWA_API const char* su3twa_result_series_name(const su3twa_result* r, size_t series);
SU3TWA_API su3twa_status su3twa_result_time(const su3twa_result* r, size_t row, double* out);
SU3TWA_API su3twa_status su3twa_result_mean(const su3twa_result* r, size_t series, size_t row,
                                            double* out);
SU3TWA_API su3twa_status su3twa_result_sem(const su3twa_result* r, size_t series, size_t row,
                                           double* out);
/* Full CSV text. Valid while r lives. */
SU3TWA_API const char* su3twa_result_csv(const su3twa_result* r);
SU3TWA_API su3twa_status su3twa_result_write_csv(const su3twa_result* r, const char* path);
SU3TWA_API void su3twa_result_free(su3twa_result* r);

/* Structure-constant validation report. Returns SU3TWA_ERR_VALIDATION when the
 * f table disagrees with the trace identities; the report is filled either
 * way. */
SU3TWA_API su3twa_status su3twa_validate_algebra(char* buf, size_t cap, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* SU3TWA_SU3TWA_H */
