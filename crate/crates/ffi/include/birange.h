#ifndef BIRANGE_H
#define BIRANGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

typedef enum BirangeKind {
  BIRANGE_KIND_BI_ELLIPTICAL = 0,
  BIRANGE_KIND_NOT_BI_ELLIPTICAL = 1,
} BirangeKind;

typedef enum BirangeReason {
  // Positive verdict.
  BIRANGE_REASON_NONE = 0,
  BIRANGE_REASON_B_NORMAL = 1,
  BIRANGE_REASON_T_NONZERO = 2,
  BIRANGE_REASON_NO_THETA = 3,
  BIRANGE_REASON_PRODUCT_NORMAL = 4,
  BIRANGE_REASON_ZERO_MULTIPLE = 5,
} BirangeReason;

typedef enum BirangeReciprocalClass {
  // The matrix was not given in reciprocal form.
  BIRANGE_RECIPROCAL_CLASS_NOT_RECIPROCAL = 0,
  BIRANGE_RECIPROCAL_CLASS_ELLIPTICAL = 1,
  BIRANGE_RECIPROCAL_CLASS_BI_ELLIPTICAL = 2,
  BIRANGE_RECIPROCAL_CLASS_NEITHER = 3,
} BirangeReciprocalClass;

// Result of every fallible call.
typedef enum BirangeStatus {
  BIRANGE_STATUS_OK = 0,
  // A required pointer argument was null.
  BIRANGE_STATUS_NULL_POINTER = 1,
  // Non-finite number, non-positive reciprocal entry, bad tolerance or count.
  BIRANGE_STATUS_INVALID_ARGUMENT = 2,
  // Raw matrix whose diagonal blocks are not scalar; only the boundary oracle applies.
  BIRANGE_STATUS_NOT_BLOCK_STRUCTURED = 3,
  // `solve_b` with `α = 0`.
  BIRANGE_STATUS_ALPHA_ZERO = 4,
  // The requested quantity does not exist for this verdict (e.g. ellipses of a negative one).
  BIRANGE_STATUS_UNAVAILABLE = 5,
  // Output buffer shorter than required.
  BIRANGE_STATUS_BUFFER_TOO_SMALL = 6,
  // Numerical failure inside the library.
  BIRANGE_STATUS_NUMERICAL = 7,
  // Caught panic; always a bug.
  BIRANGE_STATUS_INTERNAL = 8,
} BirangeStatus;

// Opaque matrix handle.
typedef struct BirangeMatrix BirangeMatrix;

// Opaque verdict handle.
typedef struct BirangeVerdict BirangeVerdict;

typedef struct BirangeTolerances {
  double criterion;
  double normal;
  double unitary;
} BirangeTolerances;

typedef struct BirangeComplex {
  double re;
  double im;
} BirangeComplex;

// Quadratic-factor parameters `(p, x, y, z)` in the reduced frame.
typedef struct BirangeParams {
  double p;
  double x;
  double y;
  double z;
} BirangeParams;

typedef struct BirangeEllipse {
  struct BirangeComplex center;
  double semi_major;
  double semi_minor;
  // Angle of the major axis, radians.
  double tilt;
} BirangeEllipse;

typedef struct BirangeBoundarySample {
  double theta;
  struct BirangeComplex point;
  double support_value;
  double gap;
} BirangeBoundarySample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread. Valid until the next
// failing call on the same thread; never null.
const char *birange_last_error(void);

// Static description of a status code; never null.
const char *birange_status_name(enum BirangeStatus status);

// Default tolerances.
struct BirangeTolerances birange_default_tolerances(void);

// A full 4×4 matrix from 16 row-major entries.
//
// # Safety
// `entries` must point to 16 readable values and `out` must be writable.
enum BirangeStatus birange_matrix_from_raw(const struct BirangeComplex *entries,
                                           struct BirangeMatrix **out);

// `[[αI, C], [D, βI]]` with `C`, `D` given as 4 row-major entries each.
//
// # Safety
// `c_entries` and `d_entries` must point to 4 readable values each and `out` must be writable.
enum BirangeStatus birange_matrix_from_block(struct BirangeComplex alpha,
                                             struct BirangeComplex beta,
                                             const struct BirangeComplex *c_entries,
                                             const struct BirangeComplex *d_entries,
                                             struct BirangeMatrix **out);

// The special form with `α = u + iv`, `B = [[b₁, b], [0, b₂]]`.
//
// # Safety
// `out` must be writable.
enum BirangeStatus birange_matrix_from_special(double u,
                                               double v,
                                               struct BirangeComplex b1,
                                               struct BirangeComplex b2,
                                               double b,
                                               struct BirangeMatrix **out);

// The reciprocal tridiagonal matrix with positive off-diagonal entries `a₁, a₂, a₃`.
//
// # Safety
// `out` must be writable.
enum BirangeStatus birange_matrix_from_reciprocal(double a1,
                                                  double a2,
                                                  double a3,
                                                  struct BirangeMatrix **out);

// Releases a matrix handle; null is ignored.
//
// # Safety
// `m` must come from a `birange_matrix_from_*` call and not be used afterwards.
void birange_matrix_free(struct BirangeMatrix *m);

// Whether the matrix has scalar diagonal blocks, i.e. whether `birange_check` applies.
//
// # Safety
// `m` must be a live handle or null (which yields false).
bool birange_matrix_is_block(const struct BirangeMatrix *m);

// Classifies `m`. `tol` may be null for the defaults.
//
// # Safety
// `m` must be a live handle, `tol` null or valid, `out` writable.
enum BirangeStatus birange_check(const struct BirangeMatrix *m,
                                 const struct BirangeTolerances *tol,
                                 struct BirangeVerdict **out);

// Releases a verdict handle; null is ignored.
//
// # Safety
// `v` must come from `birange_check` and not be used afterwards.
void birange_verdict_free(struct BirangeVerdict *v);

// # Safety
// `v` must be a live handle.
enum BirangeKind birange_verdict_kind(const struct BirangeVerdict *v);

// # Safety
// `v` must be a live handle.
enum BirangeReason birange_verdict_reason(const struct BirangeVerdict *v);

// # Safety
// `v` must be a live handle.
enum BirangeReciprocalClass birange_verdict_reciprocal_class(const struct BirangeVerdict *v);

// The angle at which the unitary condition holds, if one was found.
//
// # Safety
// `v` must be a live handle and `out` writable.
enum BirangeStatus birange_verdict_theta(const struct BirangeVerdict *v, double *out);

// Quadratic-factor parameters of a positive verdict.
//
// # Safety
// `v` must be a live handle and `out` writable.
enum BirangeStatus birange_verdict_params(const struct BirangeVerdict *v,
                                          struct BirangeParams *out);

// The two ellipses of a positive verdict, in the coordinates of the input matrix.
//
// # Safety
// `v` must be a live handle and `out` must have room for 2 ellipses.
enum BirangeStatus birange_verdict_ellipses(const struct BirangeVerdict *v,
                                            struct BirangeEllipse *out);

// Samples the boundary of the numerical range at `n ≥ 8` equally spaced
// outer normals. Works for every matrix, block-structured or not.
//
// # Safety
// `m` must be a live handle and `out` must have room for `capacity` samples.
enum BirangeStatus birange_boundary(const struct BirangeMatrix *m,
                                    size_t n,
                                    struct BirangeBoundarySample *out,
                                    size_t capacity);

// The unique `b > 0` making the special form bi-elliptical. On success
// `*found` tells whether it exists and `*b` holds it when it does.
//
// # Safety
// `b` and `found` must be writable.
enum BirangeStatus birange_solve_b(double u,
                                   double v,
                                   struct BirangeComplex b1,
                                   struct BirangeComplex b2,
                                   double *b,
                                   bool *found);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIRANGE_H */
