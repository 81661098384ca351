#ifndef RASHBA_RING_H
#define RASHBA_RING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RrStatus {
  RR_STATUS_OK = 0,
  RR_STATUS_NULL_POINTER = 1,
  RR_STATUS_INVALID_PARAMETER = 2,
  RR_STATUS_DOMAIN = 3,
  RR_STATUS_ORDER_OVERFLOW = 4,
  RR_STATUS_THRESHOLD = 5,
  RR_STATUS_RANK_DEFICIENT = 6,
  RR_STATUS_NUMERICAL = 7,
  RR_STATUS_BUFFER_TOO_SMALL = 8,
  RR_STATUS_OUT_OF_RANGE = 9,
  RR_STATUS_PANIC = 10,
} RrStatus;

typedef enum RrFamily {
  RR_FAMILY_J = 0,
  RR_FAMILY_Y = 1,
  RR_FAMILY_I = 2,
  RR_FAMILY_K = 3,
} RrFamily;

/*
 One angular-momentum channel plus spectrum options.
 */
typedef struct RrRing RrRing;

/*
 A normalised bound state.
 */
typedef struct RrSolution RrSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the calling thread's last error message (NUL-terminated,
 truncated to `cap` bytes) and returns the full message length.

 # Safety
 `buf` must be null or point to `cap` writable bytes.
 */
size_t rr_last_error_message(char *buf, size_t cap);

/*
 Library version as a static NUL-terminated string.
 */
const char *rr_version(void);

/*
 Creates a channel with default spectrum options.

 # Safety
 `ring_out` must be a valid pointer to writable storage.
 */
enum RrStatus rr_ring_new(int32_t m, double v, double beta, double r_i, struct RrRing **ring_out);

/*
 # Safety
 `ring` must be null or a handle from [`rr_ring_new`] not yet freed.
 */
void rr_ring_free(struct RrRing *ring);

/*
 # Safety
 `ring` must be a live handle.
 */
enum RrStatus rr_ring_set_options(struct RrRing *ring, size_t grid_points, double tol);

/*
 Number of levels by sign counting on the scan grid.

 # Safety
 `ring` must be a live handle and `count_out` writable.
 */
enum RrStatus rr_ring_level_count(const struct RrRing *ring, size_t *count_out);

/*
 Writes the sorted energies into `levels` (capacity `cap`) and their
 number into `len_out`. If `cap` is too small nothing is written to
 `levels`, `len_out` receives the required size and
 `RR_STATUS_BUFFER_TOO_SMALL` is returned.

 # Safety
 `ring` must be a live handle, `len_out` writable and `levels` null or
 valid for `cap` doubles.
 */
enum RrStatus rr_ring_find_levels(const struct RrRing *ring,
                                  double *levels,
                                  size_t cap,
                                  size_t *len_out);

/*
 Regularised secular determinant at `e` as sign and `ln |value|`.

 # Safety
 `ring` must be a live handle; the outputs must be writable.
 */
enum RrStatus rr_ring_secular_det(const struct RrRing *ring,
                                  double e,
                                  int32_t *sign_out,
                                  double *log_magnitude_out);

/*
 Builds the normalised state of level `index` (zero-based).

 # Safety
 `ring` must be a live handle and `solution_out` writable.
 */
enum RrStatus rr_solution_new(const struct RrRing *ring,
                              size_t index,
                              struct RrSolution **solution_out);

/*
 # Safety
 `solution` must be null or a handle from [`rr_solution_new`] not yet
 freed.
 */
void rr_solution_free(struct RrSolution *solution);

/*
 # Safety
 `solution` must be a live handle and `e_out` writable.
 */
enum RrStatus rr_solution_energy(const struct RrSolution *solution, double *e_out);

/*
 Radial components `u(r)`, `w(r)` for `r ≥ 0`.

 # Safety
 `solution` must be a live handle; the outputs must be writable.
 */
enum RrStatus rr_solution_eval(const struct RrSolution *solution,
                               double r,
                               double *u_out,
                               double *w_out);

/*
 Cylinder function `family_n(re + i im)` with the default kernel.

 # Safety
 The outputs must be writable.
 */
enum RrStatus rr_bessel_eval(enum RrFamily family,
                             int32_t n,
                             double re,
                             double im,
                             double *re_out,
                             double *im_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RASHBA_RING_H */
