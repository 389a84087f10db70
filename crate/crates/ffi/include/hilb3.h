#ifndef HILB3_H
#define HILB3_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Hilb3Status {
  Hilb3Status_Ok = 0,
  Hilb3Status_NullPointer = 1,
  Hilb3Status_InvalidArgument = 2,
  Hilb3Status_DegenerateSpecialization = 3,
  Hilb3Status_NonConstant = 4,
  Hilb3Status_Internal = 5,
  Hilb3Status_Panic = 6,
} Hilb3Status;

/**
 * Result of an invariant computation.
 */
typedef struct Hilb3Invariant Hilb3Invariant;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Free with
 * `hilb3_string_free`.
 */
char *hilb3_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed at most once.
 */
void hilb3_string_free(char *s);

/**
 * Compute `<A, B>_{0,d}` at `points` sampled specializations.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum Hilb3Status hilb3_invariant_compute(uint32_t d,
                                         uint64_t seed,
                                         uint32_t points,
                                         struct Hilb3Invariant **out);

/**
 * # Safety
 * `h` must be NULL or a handle from `hilb3_invariant_compute`, freed at most once.
 */
void hilb3_invariant_free(struct Hilb3Invariant *h);

/**
 * `<A, B>_{0,d}` as `"p/q"`, or NULL for a NULL handle.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
char *hilb3_invariant_ab(const struct Hilb3Invariant *h);

/**
 * The invariant `<A, B>_{0,d} / 3` as `"p/q"`, or NULL for a NULL handle.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
char *hilb3_invariant_value(const struct Hilb3Invariant *h);

/**
 * Number of specializations evaluated, 0 for a NULL handle.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
uintptr_t hilb3_invariant_num_points(const struct Hilb3Invariant *h);

/**
 * Writes `w`, `z` and the total at point `index` as new strings.
 *
 * # Safety
 * `h` must be a live handle; each out pointer must be valid for one write.
 */
enum Hilb3Status hilb3_invariant_point(const struct Hilb3Invariant *h,
                                       uintptr_t index,
                                       char **w,
                                       char **z,
                                       char **total);

/**
 * Number of stable graphs in family `S(i,j)` (`family = 'S'`) or
 * `T(i;j,k)` (`family = 'T'`) of degree `d`.
 *
 * # Safety
 * `out` must be valid for one write.
 */
enum Hilb3Status hilb3_graph_count(char family,
                                   uint8_t i,
                                   uint8_t j,
                                   uint8_t k,
                                   uint32_t d,
                                   uintptr_t *out);

/**
 * Checks the closed forms for degree `d` in 1..=4. `passed` receives 1 if
 * every non-diagnostic identity held, else 0.
 *
 * # Safety
 * `passed` must be valid for one write.
 */
enum Hilb3Status hilb3_verify(uint32_t d, uint64_t seed, int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HILB3_H */
