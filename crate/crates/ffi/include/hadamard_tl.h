#ifndef HADAMARD_TL_H
#define HADAMARD_TL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum HtlStatus {
  HTL_STATUS_OK = 0,
  HTL_STATUS_NULL_POINTER = 1,
  HTL_STATUS_DIMENSION = 2,
  HTL_STATUS_SINGULAR = 3,
  HTL_STATUS_ZERO_ENTRY = 4,
  HTL_STATUS_INVALID = 5,
  HTL_STATUS_PARSE = 6,
  HTL_STATUS_PANIC = 7,
} HtlStatus;

typedef struct HtlAnsatz HtlAnsatz;

typedef struct HtlBraid HtlBraid;

typedef struct HtlMasterSpec HtlMasterSpec;

typedef struct HtlMatrix HtlMatrix;

typedef struct HtlHadamardVerdict {
  bool is_chm;
  bool is_ghm;
  // Smallest Butson order, 0 when the matrix is not of Butson type.
  uint64_t butson_order;
  double max_residual;
} HtlHadamardVerdict;

typedef struct HtlTlReport {
  double loop_residual;
  // NaN below 3 sites.
  double braid_residual;
  // NaN below 4 sites.
  double commute_residual;
  double nu_re;
  double nu_im;
  bool passed;
} HtlTlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *htl_last_error(void);

// # Safety
// `s` must come from this library or be null.
void htl_string_free(char *s);

// Row-major `rows×cols` matrix from separate real and imaginary arrays.
//
// # Safety
// `re` and `im` must hold `rows*cols` values; `out` must be writable.
enum HtlStatus htl_matrix_new(size_t rows,
                              size_t cols,
                              const double *re,
                              const double *im,
                              struct HtlMatrix **out);

// # Safety
// `m` must come from this library or be null.
void htl_matrix_free(struct HtlMatrix *m);

// # Safety
// `m`, `rows` and `cols` must be valid.
enum HtlStatus htl_matrix_shape(const struct HtlMatrix *m, size_t *rows, size_t *cols);

// Entry `(i, j)`, zero-based.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_matrix_get(const struct HtlMatrix *m,
                              size_t i,
                              size_t j,
                              double *re,
                              double *im);

// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum HtlStatus htl_matrix_from_json(const char *json_text, struct HtlMatrix **out);

// # Safety
// Pointers must be valid; free the result with `htl_string_free`.
enum HtlStatus htl_matrix_to_json(const struct HtlMatrix *m, char **out);

// `a·b`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_matrix_mul(const struct HtlMatrix *a,
                              const struct HtlMatrix *b,
                              struct HtlMatrix **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_matrix_kron(const struct HtlMatrix *a,
                               const struct HtlMatrix *b,
                               struct HtlMatrix **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_matrix_inverse(const struct HtlMatrix *m,
                                  double abs_tol,
                                  struct HtlMatrix **out);

// Largest entrywise modulus of `a − b`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_matrix_max_diff(const struct HtlMatrix *a,
                                   const struct HtlMatrix *b,
                                   double *out);

// Fourier matrix of size `n` with twist `ell`.
//
// # Safety
// `out` must be writable.
enum HtlStatus htl_fourier(size_t n, int64_t ell, struct HtlMatrix **out);

// Classifies `m`; never fails on non-Hadamard input, which is reported in
// the verdict.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_is_ghm(const struct HtlMatrix *m,
                          double abs_tol,
                          struct HtlHadamardVerdict *out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_is_chm(const struct HtlMatrix *m, double abs_tol, bool *out);

// Dephased copy of `m`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_dephase(const struct HtlMatrix *m, struct HtlMatrix **out);

// # Safety
// `lambda_re`, `lambda_im` and `exponents` must hold `n` values.
enum HtlStatus htl_master_spec_new(size_t n,
                                   const double *lambda_re,
                                   const double *lambda_im,
                                   const uint64_t *exponents,
                                   struct HtlMasterSpec **out);

// # Safety
// `s` must come from this library or be null.
void htl_master_spec_free(struct HtlMasterSpec *s);

// # Safety
// `out` must be writable.
enum HtlStatus htl_fourier_master(size_t n, int64_t ell, struct HtlMasterSpec **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_master_spec_size(const struct HtlMasterSpec *s, size_t *out);

// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum HtlStatus htl_master_spec_from_json(const char *json_text, struct HtlMasterSpec **out);

// # Safety
// Pointers must be valid; free the result with `htl_string_free`.
enum HtlStatus htl_master_spec_to_json(const struct HtlMasterSpec *s, char **out);

// `Ω_ij = λ_i^{n_j}`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_master_matrix(const struct HtlMasterSpec *s, struct HtlMatrix **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_check_master(const struct HtlMasterSpec *s,
                                double abs_tol,
                                bool *passed,
                                double *max_residual);

// `M = PΛP⁻¹` for the master spec and eigenvector Hadamard matrix `h`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_reconstruct_m(const struct HtlMasterSpec *s,
                                 const struct HtlMatrix *h,
                                 double abs_tol,
                                 struct HtlMatrix **out);

// Ansatz from `M`, `n` exponents and optional weights. Pass null for
// `v_re`/`v_im` or `w_re`/`w_im` to use all-ones weights.
//
// # Safety
// Arrays must hold `n` values where non-null.
enum HtlStatus htl_ansatz_new(const struct HtlMatrix *m,
                              const int64_t *exponents,
                              size_t n,
                              const double *v_re,
                              const double *v_im,
                              const double *w_re,
                              const double *w_im,
                              size_t sites,
                              struct HtlAnsatz **out);

// # Safety
// `a` must come from this library or be null.
void htl_ansatz_free(struct HtlAnsatz *a);

// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum HtlStatus htl_ansatz_from_json(const char *json_text, struct HtlAnsatz **out);

// # Safety
// Pointers must be valid; free the result with `htl_string_free`.
enum HtlStatus htl_ansatz_to_json(const struct HtlAnsatz *a, char **out);

// Local two-site generator, `n²×n²`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_build_local(const struct HtlAnsatz *a, double abs_tol, struct HtlMatrix **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_verify_tl(const struct HtlAnsatz *a, double abs_tol, struct HtlTlReport *out);

// `Ř = qI − T/√ν` from a TL generator with loop value `ν`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_from_tl(const struct HtlMatrix *t,
                                 double nu_re,
                                 double nu_im,
                                 double abs_tol,
                                 struct HtlBraid **out);

// Braid data for the ansatz's generator and loop value.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_from_ansatz(const struct HtlAnsatz *a,
                                     double abs_tol,
                                     struct HtlBraid **out);

// # Safety
// `b` must come from this library or be null.
void htl_braid_free(struct HtlBraid *b);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_q(const struct HtlBraid *b, double *re, double *im);

// Copy of `Ř`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_matrix(const struct HtlBraid *b, struct HtlMatrix **out);

// `R = ΠŘ`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_plain_r(const struct HtlBraid *b, struct HtlMatrix **out);

// # Safety
// Pointers must be valid.
enum HtlStatus htl_braid_hecke_residual(const struct HtlBraid *b, double *out);

// Braid relation residual of a raw `Ř` of size `n²×n²`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_check_braid(const struct HtlMatrix *r_check, double *out);

// Yang-Baxter residual of a plain `R`.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_check_ybe(const struct HtlMatrix *r, double *out);

// Worst spectral Yang-Baxter residual over `count` seeded samples.
//
// # Safety
// Pointers must be valid.
enum HtlStatus htl_spectral_ybe(const struct HtlBraid *b, uint64_t seed, size_t count, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HADAMARD_TL_H */
