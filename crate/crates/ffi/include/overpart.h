#ifndef OVERPART_H
#define OVERPART_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

// Result code of every exported function.
typedef enum OverpartStatus {
  OVERPART_STATUS_OK = 0,
  OVERPART_STATUS_NULL_POINTER = 1,
  OVERPART_STATUS_INVALID_ARGUMENT = 2,
  OVERPART_STATUS_PARSE_ERROR = 3,
  OVERPART_STATUS_NOT_IN_DOMAIN = 4,
  OVERPART_STATUS_ARITHMETIC = 5,
  OVERPART_STATUS_INTERNAL = 6,
} OverpartStatus;

typedef enum OverpartMap {
  OVERPART_MAP_PHI = 0,
  OVERPART_MAP_PSI = 1,
} OverpartMap;

// How the overline variable `z` is treated.
typedef enum OverpartZMode {
  OVERPART_Z_MODE_TRACKED = 0,
  OVERPART_Z_MODE_ZERO = 1,
  OVERPART_Z_MODE_ONE = 2,
} OverpartZMode;

typedef enum OverpartFamily {
  OVERPART_FAMILY_GT = 0,
  OVERPART_FAMILY_PT = 1,
  OVERPART_FAMILY_BT = 2,
} OverpartFamily;

// A block of `t`'s paired with an overpartition with parts at most `t`.
typedef struct OverpartBipartition OverpartBipartition;

typedef struct OverpartPartition OverpartPartition;

// Truncated series in `q` with Laurent polynomial coefficients in `z`.
typedef struct OverpartSeries OverpartSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null. The
// pointer stays valid until the next failing call on the same thread.
const char *overpart_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, freed once.
void overpart_string_free(char *s);

// Parses text such as `3,3,3,1~,1`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum OverpartStatus overpart_partition_parse(const char *text, struct OverpartPartition **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_partition_to_string(const struct OverpartPartition *p, char **out);

// Sum of the parts.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_partition_weight(const struct OverpartPartition *p, uint64_t *out);

// Number of overlined parts.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_partition_num_overlined(const struct OverpartPartition *p,
                                                     uint64_t *out);

// # Safety
// `p` must be null or a live handle, freed once.
void overpart_partition_free(struct OverpartPartition *p);

// Parses text such as `[3^1 | 3,3,1~,1]`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum OverpartStatus overpart_bipartition_parse(const char *text, struct OverpartBipartition **out);

// # Safety
// `b` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_bipartition_to_string(const struct OverpartBipartition *b, char **out);

// # Safety
// `b` must be null or a live handle, freed once.
void overpart_bipartition_free(struct OverpartBipartition *b);

// Image of `pi` under phi. `NotInDomain` when `pi` is outside `G_t`.
//
// # Safety
// `pi` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_phi(const struct OverpartPartition *pi,
                                 uint64_t t,
                                 struct OverpartPartition **out);

// Image of `beta` under psi.
//
// # Safety
// `beta` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_psi(const struct OverpartBipartition *beta,
                                 uint64_t t,
                                 struct OverpartPartition **out);

// Fiber of `mu` as JSON:
// `{"mu", "t", "fiber": [..], "same_overlines", "one_more_overline", "expected_size"}`.
//
// # Safety
// `mu` must be a live handle; `out_json` must be writable.
enum OverpartStatus overpart_preimages_json(const struct OverpartPartition *mu,
                                            uint64_t t,
                                            enum OverpartMap map,
                                            char **out_json);

// `1/(1-q^t) ((-zq;q)_t/(q;q)_t - 1)` below `q^order`, with `z` tracked
// or set to 0 or 1.
//
// # Safety
// `out` must be writable.
enum OverpartStatus overpart_series_closed_form(uint32_t t,
                                                enum OverpartZMode z,
                                                int64_t order,
                                                struct OverpartSeries **out);

// `sum z^o q^weight` over the family members of weight at most `max_n`.
//
// # Safety
// `out` must be writable.
enum OverpartStatus overpart_series_from_enumeration(enum OverpartFamily family,
                                                     uint64_t t,
                                                     uint64_t max_n,
                                                     struct OverpartSeries **out);

// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum OverpartStatus overpart_series_from_json(const char *json, struct OverpartSeries **out);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_series_to_json(const struct OverpartSeries *s, char **out);

// Exponent below which the series is exact.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_series_order(const struct OverpartSeries *s, int64_t *out);

// Coefficient of `z^z_exp q^q_exp` as a decimal string. `InvalidArgument`
// when `q_exp` is at or beyond the order.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum OverpartStatus overpart_series_coeff(const struct OverpartSeries *s,
                                          int64_t z_exp,
                                          int64_t q_exp,
                                          char **out);

// Whether `a` and `b` agree below `q^upto`; both must be exact there.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum OverpartStatus overpart_series_agree(const struct OverpartSeries *a,
                                          const struct OverpartSeries *b,
                                          int64_t upto,
                                          bool *out);

// # Safety
// `s` must be null or a live handle, freed once.
void overpart_series_free(struct OverpartSeries *s);

// Chain verification report as JSON:
// `{"t", "order", "lines": [{"label", "equal_to_previous"}], "pass"}`.
//
// # Safety
// `out_json` must be writable.
enum OverpartStatus overpart_chain_json(uint64_t t,
                                        int64_t order,
                                        enum OverpartZMode z,
                                        char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OVERPART_H */
