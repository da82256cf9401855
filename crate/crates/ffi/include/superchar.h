#ifndef SUPERCHAR_H
#define SUPERCHAR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_UTF8 = 2,
  SC_STATUS_PARSE = 3,
  SC_STATUS_DOMAIN = 4,
  SC_STATUS_BUDGET = 5,
  SC_STATUS_INTERNAL = 6,
  SC_STATUS_PANIC = 7,
} ScStatus;

// A Z[q, q^-1]-combination of supercharacters of a parabolic subgroup.
typedef struct ScCombo ScCombo;

// An element of NCSym in the m or p basis.
typedef struct ScNcsym ScNcsym;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the next call.
const char *sc_last_error_message(void);

// Static version string.
const char *sc_version(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void sc_string_free(char *s);

// `χ^λ` of `U_K`. `subgroup` may be null for `U_n`; otherwise `[j,k]`, `{2,3,5}` or `{1,3|2,4}`.
// `partition` is an arc list such as `1-5:1, 2-4:2`.
//
// # Safety
// Pointers must be valid; `out` receives a new handle.
enum ScStatus sc_combo_chi(uint32_t n,
                           uint32_t p,
                           const char *partition,
                           const char *subgroup,
                           struct ScCombo **out);

// Parses the text rendering produced by [`sc_combo_to_text`].
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_combo_parse(const char *s, struct ScCombo **out);

// # Safety
// `c` must come from this library and not be freed twice. Null is ignored.
void sc_combo_free(struct ScCombo *c);

// Number of nonzero terms.
//
// # Safety
// `c` must be a valid handle or null (returns 0).
size_t sc_combo_len(const struct ScCombo *c);

// # Safety
// Pointers must be valid.
enum ScStatus sc_combo_to_text(const struct ScCombo *c, char **out);

// # Safety
// Pointers must be valid.
enum ScStatus sc_combo_to_json(const struct ScCombo *c, char **out);

// Restriction to a parabolic subgroup refining the current ambient.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_restrict(const struct ScCombo *c, const char *subgroup, struct ScCombo **out);

// Superinduction to `target` (null for `U_n`).
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_superinduce(const struct ScCombo *c, const char *target, struct ScCombo **out);

// # Safety
// Pointers must be valid.
enum ScStatus sc_tensor(const struct ScCombo *a, const struct ScCombo *b, struct ScCombo **out);

// `⟨a, b⟩` as a Laurent polynomial in `q`, rendered as text.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_inner_product(const struct ScCombo *a, const struct ScCombo *b, char **out);

// Value at the superclass of `u_μ`, rendered as a cyclotomic number.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_value(const struct ScCombo *c, const char *at, char **out);

// Number of `F_q`-labeled set partitions of `{1..n}`, in decimal.
//
// # Safety
// `out` must be valid.
enum ScStatus sc_count(uint32_t n, uint32_t q, char **out);

// Parses `p{1|2} - 1/2 m{1,2}` style input of the given degree.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_ncsym_parse(const char *s, uint32_t degree, struct ScNcsym **out);

// # Safety
// `x` must come from this library and not be freed twice. Null is ignored.
void sc_ncsym_free(struct ScNcsym *x);

// Rewrites in basis `'m'` or `'p'`.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_ncsym_to_basis(const struct ScNcsym *x, char basis, struct ScNcsym **out);

// `x ∗_K y` along a two-block `K` such as `{1,3|2}`.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_ncsym_star(const struct ScNcsym *x,
                            const struct ScNcsym *y,
                            const char *blocks,
                            struct ScNcsym **out);

// # Safety
// Pointers must be valid.
enum ScStatus sc_ncsym_to_text(const struct ScNcsym *x, char **out);

// # Safety
// Pointers must be valid.
enum ScStatus sc_ncsym_to_json(const struct ScNcsym *x, char **out);

// Runs a verification suite. `budget` of 0 keeps the default oracle limit.
//
// # Safety
// Pointers must be valid.
enum ScStatus sc_verify(const char *suite,
                        uint32_t max_n,
                        uint32_t q,
                        uint64_t budget,
                        bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERCHAR_H */
