#ifndef LEGAUG_H
#define LEGAUG_H

/* Generated by cbindgen from legaug-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every interface function.
typedef enum LegaugStatus {
  LEGAUG_OK = 0,
  // A required pointer argument was null.
  LEGAUG_NULL_ARGUMENT = 1,
  // Input text was not valid UTF-8.
  LEGAUG_UTF8_ERROR = 2,
  // The front file failed to parse or validate.
  LEGAUG_PARSE_ERROR = 3,
  // The grading modulus is incompatible with the diagram.
  LEGAUG_GRADING_ERROR = 4,
  // An enumeration exceeded its cap, or a count overflowed 64 bits.
  LEGAUG_SCALE_ERROR = 5,
  // Any other computation failure.
  LEGAUG_COMPUTE_ERROR = 6,
} LegaugStatus;

// Opaque parsed diagram, created by `legaug_diagram_parse`.
typedef struct LegaugDiagram LegaugDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse front text into a diagram handle.
//
// # Safety
// `text` must point to a NUL-terminated string and `out` to a valid
// pointer slot. On `LEGAUG_OK` the handle must eventually be released
// with `legaug_diagram_free`.
enum LegaugStatus legaug_diagram_parse(const char *text, struct LegaugDiagram **out);

// Release a diagram handle. A null handle is a no-op.
//
// # Safety
// `d` must be a handle from `legaug_diagram_parse` that has not already
// been freed.
void legaug_diagram_free(struct LegaugDiagram *d);

// Release a string handed out by this library. A null pointer is a no-op.
//
// # Safety
// `s` must be a string returned by one of these functions that has not
// already been freed.
void legaug_string_free(char *s);

// Write the diagram back out in front-file syntax.
//
// # Safety
// `d` must be a live handle, `out` a valid pointer slot; the string must
// be released with `legaug_string_free`.
enum LegaugStatus legaug_diagram_serialize(const struct LegaugDiagram *d, char **out);

// The m-graded ruling polynomial as JSON: {"terms": [[exponent, coeff], ...]}.
//
// # Safety
// `d` must be a live handle, `out` a valid pointer slot; the string must
// be released with `legaug_string_free`.
enum LegaugStatus legaug_ruling_polynomial_json(const struct LegaugDiagram *d,
                                                int64_t m,
                                                char **out);

// Generators and differentials of the Chekanov-Eliashberg algebra as JSON.
//
// # Safety
// `d` must be a live handle, `out` a valid pointer slot; the string must
// be released with `legaug_string_free`.
enum LegaugStatus legaug_dga_json(const struct LegaugDiagram *d, char **out);

// Count m-graded augmentations to GF(q). `method` is "brute", "mcs" or
// "ruling"; a null method means "ruling". Cap 0 selects the default
// enumeration bound. Counts above 2^64 - 1 report `LEGAUG_SCALE_ERROR`.
//
// # Safety
// `d` must be a live handle, `out_count` a valid slot, and `method` null
// or NUL-terminated.
enum LegaugStatus legaug_aug_count(const struct LegaugDiagram *d,
                                   int64_t m,
                                   uint64_t q,
                                   const char *method,
                                   uint64_t cap,
                                   uint64_t *out_count);

// Run all three counts and the polynomial identity for one (m, q); the
// JSON row matches the command line `verify` verb. Cap 0 selects the
// default enumeration bound.
//
// # Safety
// `d` must be a live handle, `out` a valid pointer slot; the string must
// be released with `legaug_string_free`.
enum LegaugStatus legaug_verify_json(const struct LegaugDiagram *d,
                                     int64_t m,
                                     uint64_t q,
                                     uint64_t cap,
                                     char **out);

// Dimension of the m-graded augmentation variety; writes -1 when the
// variety is empty.
//
// # Safety
// `d` must be a live handle and `out_dim` a valid slot.
enum LegaugStatus legaug_variety_dim(const struct LegaugDiagram *d, int64_t m, int64_t *out_dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEGAUG_H */
