#ifndef CHASLES_H
#define CHASLES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum ChaslesStatus {
  CHASLES_STATUS_OK = 0,
  CHASLES_STATUS_NULL_POINTER = 1,
  CHASLES_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or invalid arguments.
   */
  CHASLES_STATUS_INPUT_ERROR = 3,
  /**
   * Degenerate or non-generic mathematical data.
   */
  CHASLES_STATUS_DEGENERATE = 4,
  /**
   * A panic was caught at the boundary.
   */
  CHASLES_STATUS_INTERNAL = 5,
} ChaslesStatus;

/**
 * A lattice configuration. Create with [`chasles_config_from_json`],
 * release with [`chasles_config_free`].
 */
typedef struct ChaslesConfig ChaslesConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *chasles_last_error_message(void);

/**
 * Parses `{"d": 2, "points": [[0,0], ...]}` into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ChaslesStatus chasles_config_from_json(const char *json, struct ChaslesConfig **out);

/**
 * # Safety
 * `config` must come from [`chasles_config_from_json`] and not be freed twice.
 */
void chasles_config_free(struct ChaslesConfig *config);

/**
 * # Safety
 * `config` must be a live handle or null.
 */
size_t chasles_config_len(const struct ChaslesConfig *config);

/**
 * # Safety
 * `config` must be a live handle or null.
 */
size_t chasles_config_dim(const struct ChaslesConfig *config);

/**
 * Normalized volume of the convex hull (0 when not full-dimensional).
 *
 * # Safety
 * `config` must be a live handle and `out` a valid pointer.
 */
enum ChaslesStatus chasles_config_volume(const struct ChaslesConfig *config, uint64_t *out);

/**
 * Writes whether `|A| + 1 = vol(A) + d`, and `N = vol(A) - 1`.
 *
 * # Safety
 * `config` must be a live handle; `is_chasles` and `n` valid pointers.
 */
enum ChaslesStatus chasles_config_is_chasles(const struct ChaslesConfig *config,
                                             bool *is_chasles,
                                             int64_t *n);

/**
 * Mixed volume of `count` configurations, the i-th taken `multiplicities[i]` times.
 *
 * # Safety
 * `configs` and `multiplicities` must point to `count` valid entries.
 */
enum ChaslesStatus chasles_mixed_volume(const struct ChaslesConfig *const *configs,
                                        const size_t *multiplicities,
                                        size_t count,
                                        uint64_t *out);

/**
 * Extra point from `{"structure": ..., "points": [["p/q", ...], ...]}`
 * by the product-of-roots formula. On success `*out_json` holds the
 * response, to be released with [`chasles_string_free`].
 *
 * # Safety
 * `request` must be a NUL-terminated string and `out_json` a valid pointer.
 */
enum ChaslesStatus chasles_extra_point_json(const char *request, char **out_json);

/**
 * As [`chasles_extra_point_json`], reading the point off eliminants.
 *
 * # Safety
 * Same as [`chasles_extra_point_json`].
 */
enum ChaslesStatus chasles_eliminant_point_json(const char *request, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void chasles_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHASLES_H */
