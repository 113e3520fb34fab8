#ifndef CUBIC_GENUS_H
#define CUBIC_GENUS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CgSign {
  CG_SIGN_POSITIVE = 1,
  CG_SIGN_NEGATIVE = -1,
} CgSign;

typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_INCONSISTENCY = 1,
  CG_STATUS_INVALID_ARGUMENT = 2,
  CG_STATUS_RESOURCE_EXCEEDED = 3,
  CG_STATUS_NULL_POINTER = 4,
  CG_STATUS_PANIC = 5,
} CgStatus;

/**
 * Records and summary of a finished census.
 */
typedef struct CgCensus CgCensus;

/**
 * Constant evaluator holding its Euler-product prime tables.
 */
typedef struct CgConstants CgConstants;

/**
 * An exact rational number.
 */
typedef struct CgRational CgRational;

/**
 * One cubic field: `delta = d·f²·9^t` with `t = three_type`, and the reduced
 * form `a x³ + b x²y + c xy² + d_coeff y³`.
 */
typedef struct CgFieldRecord {
  int64_t delta;
  int64_t d;
  uint64_t f;
  uint8_t three_type;
  bool is_cyclic;
  uint32_t genus_exponent;
  int64_t a;
  int64_t b;
  int64_t c;
  int64_t d_coeff;
} CgFieldRecord;

/**
 * A real number `value ± abs_error`.
 */
typedef struct CgBounded {
  double value;
  double abs_error;
} CgBounded;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from this thread.
 */
const char *cg_last_error(void);

/**
 * Classify the field of an irreducible binary cubic form whose discriminant
 * is fundamental.
 */
enum CgStatus cg_classify_form(int64_t a,
                               int64_t b,
                               int64_t c,
                               int64_t d,
                               struct CgFieldRecord *out_record);

/**
 * Enumerate all cubic fields of the given sign with `|Δ| ≤ max_disc`.
 * `sign` is a [`CgSign`] value; `workers = 0` uses the available parallelism.
 */
enum CgStatus cg_census_run(uint64_t max_disc,
                            int32_t sign,
                            uint32_t workers,
                            struct CgCensus **out_census);

enum CgStatus cg_census_len(const struct CgCensus *census, uint64_t *out_len);

/**
 * Record `index` in `(|Δ|, form)` order.
 */
enum CgStatus cg_census_record(const struct CgCensus *census,
                               uint64_t index,
                               struct CgFieldRecord *out_record);

/**
 * Number of fields with genus exponent `k`.
 */
enum CgStatus cg_census_count_by_genus_exponent(const struct CgCensus *census,
                                                uint32_t k,
                                                uint64_t *out_count);

enum CgStatus cg_census_average_genus(const struct CgCensus *census, double *out_value);

void cg_census_free(struct CgCensus *census);

/**
 * Build an evaluator with Euler products truncated at `cutoff`.
 */
enum CgStatus cg_constants_new(uint64_t cutoff, struct CgConstants **out_constants);

enum CgStatus cg_constants_genus_one_density(const struct CgConstants *c,
                                             struct CgBounded *out_value);

enum CgStatus cg_constants_average_genus(const struct CgConstants *c, struct CgBounded *out_value);

/**
 * Limiting proportion of fields with genus number `3^k`.
 */
enum CgStatus cg_constants_genus_distribution(const struct CgConstants *c,
                                              uint32_t k,
                                              struct CgBounded *out_value);

void cg_constants_free(struct CgConstants *c);

/**
 * Exact Heilbronn weight `b_F`.
 */
enum CgStatus cg_bf(uint64_t f, struct CgRational **out_rational);

/**
 * The 3-adic density `μ₃(S)` audited up to modulus `3^max_exponent`, and
 * its normalized local factor.
 */
enum CgStatus cg_padic_density(uint32_t max_exponent,
                               struct CgRational **out_mu3,
                               struct CgRational **out_factor);

/**
 * `"num/den"` (or an integer), owned by the handle.
 */
const char *cg_rational_text(const struct CgRational *r);

/**
 * Nearest double.
 */
enum CgStatus cg_rational_value(const struct CgRational *r, double *out_value);

void cg_rational_free(struct CgRational *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBIC_GENUS_H */
