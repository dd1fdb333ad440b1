#ifndef LIEWORK_H
#define LIEWORK_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum LwStatus {
  LW_STATUS_OK = 0,
  /**
   * The computation ran and the checked statement does not hold.
   */
  LW_STATUS_FALSIFIED = 1,
  LW_STATUS_PARSE = 2,
  /**
   * The input does not satisfy the operation's hypothesis.
   */
  LW_STATUS_PRECONDITION = 3,
  LW_STATUS_NULL_ARG = 4,
  LW_STATUS_INVALID_UTF8 = 5,
  LW_STATUS_NOT_FOUND = 6,
  LW_STATUS_WRONG_KIND = 7,
  LW_STATUS_PANIC = 8,
  LW_STATUS_INTERNAL = 9,
} LwStatus;

/**
 * Opaque finite metric group.
 */
typedef struct LwGroup LwGroup;

/**
 * Opaque Lie algebra with its metric.
 */
typedef struct LwLie LwLie;

/**
 * The four affine conditions and the counts behind them.
 */
typedef struct LwTfae {
  bool a;
  bool b;
  bool c;
  bool d;
  bool equivalent;
  size_t isometry_count;
  size_t translation_count;
  size_t stabilizer_count;
  size_t affine_count;
} LwTfae;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a Lie algebra file.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_handle` must be writable.
 */
enum LwStatus lw_lie_parse(const char *text, struct LwLie **out_handle);

/**
 * Looks up a built-in Lie algebra by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_handle` must be writable.
 */
enum LwStatus lw_lie_catalog(const char *name, struct LwLie **out_handle);

/**
 * # Safety
 * `handle` must come from `lw_lie_parse` or `lw_lie_catalog`, or be null.
 */
void lw_lie_free(struct LwLie *handle);

/**
 * # Safety
 * `handle` must be a live handle; `out_dim` must be writable.
 */
enum LwStatus lw_lie_dim(const struct LwLie *handle, size_t *out_dim);

/**
 * # Safety
 * `handle` must be a live handle; `out_flag` must be writable.
 */
enum LwStatus lw_lie_is_nilpotent(const struct LwLie *handle, bool *out_flag);

/**
 * # Safety
 * `handle` must be a live handle; `out_dim` must be writable.
 */
enum LwStatus lw_lie_nilradical_dim(const struct LwLie *handle, size_t *out_dim);

/**
 * Dimension of the derivation algebra, or of the skew-symmetric
 * derivations for the handle's metric when `skew` is set.
 *
 * # Safety
 * `handle` must be a live handle; `out_dim` must be writable.
 */
enum LwStatus lw_lie_derivations_dim(const struct LwLie *handle, bool skew, size_t *out_dim);

/**
 * Checks that the nilradical of the isometry algebra is the base.
 * Returns `Ok` when it is, `Falsified` when not and `Precondition` for a
 * non-nilpotent base.
 *
 * # Safety
 * `handle` must be a live handle.
 */
enum LwStatus lw_lie_nilradical_condition(const struct LwLie *handle);

/**
 * Parses a finite metric group file.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_handle` must be writable.
 */
enum LwStatus lw_group_parse(const char *text, struct LwGroup **out_handle);

/**
 * Looks up a built-in metric group by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_handle` must be writable.
 */
enum LwStatus lw_group_catalog(const char *name, struct LwGroup **out_handle);

/**
 * # Safety
 * `handle` must come from `lw_group_parse` or `lw_group_catalog`, or be null.
 */
void lw_group_free(struct LwGroup *handle);

/**
 * # Safety
 * `handle` must be a live handle; `out_order` must be writable.
 */
enum LwStatus lw_group_order(const struct LwGroup *handle, size_t *out_order);

/**
 * # Safety
 * `handle` must be a live handle; `out_count` must be writable.
 */
enum LwStatus lw_group_isometry_count(const struct LwGroup *handle, size_t *out_count);

/**
 * Evaluates the four affine conditions. Returns `Falsified` if they are
 * not all equal; `out_report` is filled either way.
 *
 * # Safety
 * `handle` must be a live handle; `out_report` must be writable.
 */
enum LwStatus lw_group_tfae(const struct LwGroup *handle, struct LwTfae *out_report);

/**
 * Full JSON report for the input text. The returned string is owned by
 * the caller and released with [`lw_string_free`].
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out_json` must be writable.
 */
enum LwStatus lw_report_json(const char *text, char **out_json);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void lw_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *lw_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIEWORK_H */
