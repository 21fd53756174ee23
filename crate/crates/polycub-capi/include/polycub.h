#ifndef POLYCUB_H
#define POLYCUB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible `pc_*` call.
 */
typedef enum {
  PC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PC_STATUS_NULL_ARGUMENT = 1,
  /**
   * Parameters violate a precondition (bad weight id, even M, ...).
   */
  PC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numerical procedure failed to converge.
   */
  PC_STATUS_NUMERICAL = 3,
  /**
   * Malformed weight JSON or rule/sample file contents.
   */
  PC_STATUS_PARSE = 4,
  /**
   * Filesystem error.
   */
  PC_STATUS_IO = 5,
} PcStatus;

/**
 * Opaque cubature-rule handle.
 */
typedef struct PcRule PcRule;

/**
 * Opaque weight handle.
 */
typedef struct PcWeight PcWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static name of a status code, for diagnostics.
 */
const char *pc_status_name(PcStatus status);

/**
 * Builds a built-in weight (`"w1"` or `"w2"`) on the disc of radius
 * `radius`, truncated at harmonic degree `k_trunc`.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the weight until [`pc_weight_free`].
 */
PcStatus pc_weight_builtin(const char *id, double radius, uint32_t k_trunc, PcWeight **out);

/**
 * Parses a weight description from JSON text (the same schema the CLI
 * accepts for `--weight <file>`).
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be valid.
 */
PcStatus pc_weight_from_json(const char *json, PcWeight **out);

/**
 * Weight norm `‖w‖ = Σ ∫ |w_(k,ℓ)| r dr`.
 *
 * # Safety
 * `weight` must come from a `pc_weight_*` constructor; `out` must be valid.
 */
PcStatus pc_weight_norm(const PcWeight *weight, double *out);

/**
 * Releases a weight handle. Null is ignored.
 *
 * # Safety
 * `weight` must be null or a pointer obtained from a `pc_weight_*`
 * constructor, not yet freed.
 */
void pc_weight_free(PcWeight *weight);

/**
 * Builds the hybrid cubature rule with `n`-point radial rules, an odd
 * `m`-point angular grid, harmonic truncation `k`, and `n1` uniform
 * sampling circles. `center_node` selects the center policy: `false` is
 * the table-reproducing default (center weight 0), `true` folds the
 * center knot into a node that weights `f(0)`.
 *
 * # Safety
 * `weight` must be a live weight handle; `out` must be valid. On success
 * `*out` owns the rule until [`pc_rule_free`].
 */
PcStatus pc_rule_build(const PcWeight *weight,
                       uint32_t n,
                       uint32_t m,
                       uint32_t k,
                       uint32_t n1,
                       bool center_node,
                       PcRule **out);

/**
 * Number of sampling circles `N₁`; 0 when `rule` is null.
 *
 * # Safety
 * `rule` must be null or a live rule handle.
 */
uint32_t pc_rule_ring_count(const PcRule *rule);

/**
 * Angular grid size `M`; 0 when `rule` is null.
 *
 * # Safety
 * `rule` must be null or a live rule handle.
 */
uint32_t pc_rule_angle_count(const PcRule *rule);

/**
 * Copies the `N₁·M` node weights into `buffer`, row-major over `(m, s)`.
 * `len` must be exactly `N₁·M`.
 *
 * # Safety
 * `rule` must be a live rule handle; `buffer` must point to `len`
 * writable doubles.
 */
PcStatus pc_rule_weights(const PcRule *rule, double *buffer, size_t len);

/**
 * Weight attached to the single center evaluation `f(0)` (zero under the
 * default policy).
 *
 * # Safety
 * `rule` must be a live rule handle; `out` must be valid.
 */
PcStatus pc_rule_center_weight(const PcRule *rule, double *out);

/**
 * Cartesian position and weight of the 1-based grid node `(ring, angle)`.
 *
 * # Safety
 * `rule` must be a live rule handle; the three out pointers must be valid.
 */
PcStatus pc_rule_node(const PcRule *rule,
                      uint32_t ring,
                      uint32_t angle,
                      double *out_x,
                      double *out_y,
                      double *out_weight);

/**
 * Applies the rule to integrand samples laid out row-major over `(m, s)`
 * (`len == N₁·M`), plus the center value `f(0)`.
 *
 * # Safety
 * `rule` must be a live rule handle; `samples` must point to `len`
 * readable doubles; `out` must be valid.
 */
PcStatus pc_rule_integrate(const PcRule *rule,
                           const double *samples,
                           size_t len,
                           double center_value,
                           double *out);

/**
 * Writes the rule to `path` as CSV (`format = 0`) or JSON (`format = 1`),
 * in the same layouts the CLI emits.
 *
 * # Safety
 * `rule` must be a live rule handle; `path` must be a valid
 * NUL-terminated string.
 */
PcStatus pc_rule_save(const PcRule *rule, const char *path, uint32_t format);

/**
 * Releases a rule handle. Null is ignored.
 *
 * # Safety
 * `rule` must be null or a pointer obtained from [`pc_rule_build`], not
 * yet freed.
 */
void pc_rule_free(PcRule *rule);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYCUB_H */
