#ifndef MCKAY_E8_H
#define MCKAY_E8_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum MckayStatus {
  MCKAY_STATUS_OK = 0,
  /**
   * The computation ran but at least one check failed.
   */
  MCKAY_STATUS_CHECK_FAILED = 1,
  MCKAY_STATUS_INVALID_ARGUMENT = 2,
  MCKAY_STATUS_NULL_POINTER = 3,
  MCKAY_STATUS_TABLE_MISMATCH = 4,
  /**
   * Input data (codes, files) could not be read or is malformed.
   */
  MCKAY_STATUS_DATA_ERROR = 5,
  /**
   * A value does not fit the C representation, e.g. a rational with
   * components beyond 64 bits.
   */
  MCKAY_STATUS_OVERFLOW = 6,
  MCKAY_STATUS_INTERNAL = 7,
  MCKAY_STATUS_PANIC = 8,
} MckayStatus;

/**
 * Report for one node of the extended E8 diagram.
 */
typedef struct MckayNodeReport MckayNodeReport;

/**
 * Workspace holding the `√2E8` algebra, the dual-coset module and the
 * Leech lattice; shared by all node reports.
 */
typedef struct MckayWorkspace MckayWorkspace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mckay_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *mckay_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void mckay_string_free(char *s);

/**
 * Builds a workspace over the built-in Z4 code. Takes a few seconds.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MckayStatus mckay_workspace_new(struct MckayWorkspace **out);

/**
 * # Safety
 * `ws` must come from `mckay_workspace_new` and not have been freed.
 */
void mckay_workspace_free(struct MckayWorkspace *ws);

/**
 * Computes the report for node `i` (0..=8). Failed checks do not make this
 * call fail; inspect `mckay_node_report_pass`.
 *
 * # Safety
 * `ws` must be a live workspace and `out` a valid pointer.
 */
enum MckayStatus mckay_node_report(const struct MckayWorkspace *ws,
                                   size_t i,
                                   struct MckayNodeReport **out);

/**
 * # Safety
 * `r` must come from `mckay_node_report` and not have been freed.
 */
void mckay_node_report_free(struct MckayNodeReport *r);

/**
 * ⟨ê,f̂⟩ as `num/den` with `den > 0`.
 *
 * # Safety
 * `r` must be a live report; `num` and `den` valid pointers.
 */
enum MckayStatus mckay_node_report_inner(const struct MckayNodeReport *r,
                                         int64_t *num,
                                         int64_t *den);

/**
 * Order n_i of the diagram automorphism and dim U₂.
 *
 * # Safety
 * `r` must be a live report; `n` and `u2_dim` valid pointers.
 */
enum MckayStatus mckay_node_report_dims(const struct MckayNodeReport *r, size_t *n, size_t *u2_dim);

/**
 * Orders of τ_ê τ_f̂ on weight 2 of V_√2E8, on the dual-coset module and
 * through the Leech phase map.
 *
 * # Safety
 * `r` must be a live report; the three outputs valid pointers.
 */
enum MckayStatus mckay_node_report_tau_orders(const struct MckayNodeReport *r,
                                              size_t *e8,
                                              size_t *dual,
                                              uint64_t *leech);

/**
 * `MCKAY_STATUS_OK` when every check of the node passed, else
 * `MCKAY_STATUS_CHECK_FAILED`.
 *
 * # Safety
 * `r` must be a live report.
 */
enum MckayStatus mckay_node_report_pass(const struct MckayNodeReport *r);

/**
 * The report as pretty-printed JSON. Free with `mckay_string_free`.
 *
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum MckayStatus mckay_node_report_json(const struct MckayNodeReport *r, char **out);

/**
 * `1/2⁶ + (1/2¹⁰)(|Φ| + Σ_j ξ^j |H_j|)` with ξ a primitive n-th root of
 * unity and `h` of length `n - 1`, as `num/den`.
 *
 * # Safety
 * `h` must point to `h_len` values (or be NULL with `h_len == 0`); `num`
 * and `den` valid pointers.
 */
enum MckayStatus mckay_counting_formula(size_t n,
                                        size_t phi,
                                        const size_t *h,
                                        size_t h_len,
                                        int64_t *num,
                                        int64_t *den);

/**
 * Runs a CLI command (`"verify-mckay"`, `"verify-griess"`, `"verify-leech"`,
 * `"verify-codes"`, `"verify-all"`) with JSON output written to `*out`.
 * `nodes` may be NULL to select all nodes; `data_dir` may be NULL to use
 * the built-in codes. Returns `MCKAY_STATUS_CHECK_FAILED` with the full
 * report in `*out` when a check fails.
 *
 * # Safety
 * `command` must be a NUL-terminated string, `nodes` must point to
 * `nodes_len` values when non-NULL, `data_dir` NULL or NUL-terminated, and
 * `out` a valid pointer.
 */
enum MckayStatus mckay_run_json(const char *command,
                                const size_t *nodes,
                                size_t nodes_len,
                                const char *data_dir,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MCKAY_E8_H */
