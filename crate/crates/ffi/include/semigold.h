#ifndef SEMIGOLD_H
#define SEMIGOLD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_ARGUMENT = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE = 3,
  SG_STATUS_NOT_APPLICABLE = 4,
  SG_STATUS_CONDITION_NOT_MET = 5,
  SG_STATUS_INCONCLUSIVE = 6,
  SG_STATUS_INVALID_SERIES = 7,
  SG_STATUS_DEFECT = 8,
  SG_STATUS_PANIC = 9,
  SG_STATUS_OTHER = 10,
} SgStatus;

// Search budgets; see `SearchConfig` in the core crate.
typedef struct SgConfig SgConfig;

// Parsed polynomial together with its variable names.
typedef struct SgPoly SgPoly;

typedef struct SgSeries SgSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *sg_last_error(void);

// Library version as a static NUL-terminated string.
const char *sg_version(void);

// New configuration with the default budgets (`SEMIGOLD_BUDGET` applies).
struct SgConfig *sg_config_new(void);

// # Safety
// `cfg` is NULL or a live handle from [`sg_config_new`].
enum SgStatus sg_config_set_budget(struct SgConfig *cfg, uint64_t budget);

// # Safety
// `cfg` is NULL or a live handle from [`sg_config_new`].
enum SgStatus sg_config_set_check_order(struct SgConfig *cfg, int64_t order);

// # Safety
// `cfg` is NULL or a handle from [`sg_config_new`] not freed before.
void sg_config_free(struct SgConfig *cfg);

// Parses `text` over the instance named `ring` (`n0`, `q+`, `n0sqrt2`,
// `two-thirds`, `multi:<k>`). `vars` is a comma-separated list, or NULL
// for `x, y, ...`.
//
// # Safety
// String arguments are NULL or NUL-terminated; `out` points to writable storage.
enum SgStatus sg_poly_parse(const char *text,
                            const char *ring,
                            const char *vars,
                            struct SgPoly **out);

// # Safety
// `p` is NULL or a handle from [`sg_poly_parse`] not freed before.
void sg_poly_free(struct SgPoly *p);

// Text form of `p`, to be released with [`sg_string_free`].
//
// # Safety
// `p` is a live handle; `out` points to writable storage.
enum SgStatus sg_poly_to_string(const struct SgPoly *p, char **out);

// Two-summand decomposition of `p` as a JSON verdict. `cfg` may be NULL.
//
// # Safety
// `p` is a live handle, `cfg` NULL or live; `out` points to writable storage.
enum SgStatus sg_decompose_json(const struct SgPoly *p, const struct SgConfig *cfg, char **out);

// Irreducibility verdict for `p` as JSON. `cfg` may be NULL.
//
// # Safety
// As for [`sg_decompose_json`].
enum SgStatus sg_certify_json(const struct SgPoly *p, const struct SgConfig *cfg, char **out);

// Parses `head: ...; tail: ...` in the variable `x`.
//
// # Safety
// String arguments are NULL or NUL-terminated; `out` points to writable storage.
enum SgStatus sg_series_parse(const char *text, const char *ring, struct SgSeries **out);

// # Safety
// `s` is NULL or a handle from [`sg_series_parse`] not freed before.
void sg_series_free(struct SgSeries *s);

// The terms of `s` with exponent at most `order`, as a new polynomial handle.
//
// # Safety
// `s` is a live handle; `out` points to writable storage.
enum SgStatus sg_series_truncate(const struct SgSeries *s, int64_t order, struct SgPoly **out);

// Decomposition of `s` into at most three irreducibles, as JSON with
// truncations at `order`.
//
// # Safety
// `s` is a live handle, `cfg` NULL or live; `out` points to writable storage.
enum SgStatus sg_series_decompose_json(const struct SgSeries *s,
                                       const struct SgConfig *cfg,
                                       int64_t order,
                                       char **out);

// The family member of `s` indexed by `subset` (`ap:<first>:<step>` or
// `bits:<seed>`), as JSON.
//
// # Safety
// As for [`sg_series_decompose_json`]; `subset` is NUL-terminated.
enum SgStatus sg_series_family_json(const struct SgSeries *s,
                                    const char *subset,
                                    const struct SgConfig *cfg,
                                    int64_t order,
                                    char **out);

// Releases a string returned by this library.
//
// # Safety
// `s` is NULL or a string from this library not freed before.
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIGOLD_H */
