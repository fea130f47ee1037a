#ifndef CDLATTICE_H
#define CDLATTICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. `CDL_STATUS_OK` is zero; everything else is an error.
typedef enum CdlStatus {
  CDL_STATUS_OK = 0,
  CDL_STATUS_NULL_POINTER = 1,
  CDL_STATUS_INVALID_UTF8 = 2,
  CDL_STATUS_INVALID_PARAMETER = 3,
  CDL_STATUS_INVALID_ACTION = 4,
  CDL_STATUS_NOT_NORMAL = 5,
  CDL_STATUS_CAPACITY = 6,
  CDL_STATUS_INVALID_TABLE = 7,
  CDL_STATUS_NOT_A_SUBLATTICE = 8,
  CDL_STATUS_INTERNAL = 9,
  CDL_STATUS_INVALID_SPEC = 10,
  CDL_STATUS_UNSUPPORTED = 11,
  CDL_STATUS_OUT_OF_RANGE = 12,
  CDL_STATUS_PANIC = 13,
} CdlStatus;

// Opaque group handle.
typedef struct CdlGroup CdlGroup;

// Opaque subgroup-lattice handle. Holds its own copy of the group.
typedef struct CdlLattice CdlLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *cdl_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void cdl_string_free(char *s);

// Builds a group from a spec such as `"Q8xC2"` or `"SDP(9,9,4)"`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum CdlStatus cdl_group_from_spec(const char *spec, struct CdlGroup **out);

// Builds a group from a row-major `order × order` Cayley table.
//
// # Safety
// `label` must be a NUL-terminated string, `table` must point to
// `order * order` readable values, and `out` must be writable.
enum CdlStatus cdl_group_from_table(const char *label,
                                    const size_t *table,
                                    size_t order,
                                    struct CdlGroup **out);

// # Safety
// `g` must be NULL or a handle from this library, not yet freed.
void cdl_group_free(struct CdlGroup *g);

// Order of the group, or 0 for a NULL handle.
//
// # Safety
// `g` must be NULL or a live group handle.
size_t cdl_group_order(const struct CdlGroup *g);

// # Safety
// `g` must be a live group handle; `out` must be writable.
enum CdlStatus cdl_group_label(const struct CdlGroup *g, char **out);

// # Safety
// `g` must be a live group handle; `out` must be writable.
enum CdlStatus cdl_group_element_order(const struct CdlGroup *g, size_t index, size_t *out);

// `a · b`.
//
// # Safety
// `g` must be a live group handle; `out` must be writable.
enum CdlStatus cdl_group_mul(const struct CdlGroup *g, size_t a, size_t b, size_t *out);

// Enumerates all subgroups. `max_subgroups = 0` selects the default cap.
//
// # Safety
// `g` must be a live group handle; `out` must be writable.
enum CdlStatus cdl_lattice_new(const struct CdlGroup *g,
                               size_t max_subgroups,
                               struct CdlLattice **out);

// # Safety
// `l` must be NULL or a handle from this library, not yet freed.
void cdl_lattice_free(struct CdlLattice *l);

// Number of subgroups, or 0 for a NULL handle.
//
// # Safety
// `l` must be NULL or a live lattice handle.
size_t cdl_lattice_len(const struct CdlLattice *l);

// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_subgroup_size(const struct CdlLattice *l, size_t id, size_t *out);

// Chermak–Delgado measure `|H|·|C_G(H)|` of subgroup `id`.
//
// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_measure(const struct CdlLattice *l, size_t id, uint64_t *out);

// Maximal measure over all subgroups.
//
// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_m_star(const struct CdlLattice *l, uint64_t *out);

// Writes 1 to `out` when subgroup `id` attains the maximal measure.
//
// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_is_cd_member(const struct CdlLattice *l, size_t id, uint8_t *out);

// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_meet(const struct CdlLattice *l, size_t a, size_t b, size_t *out);

// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_join(const struct CdlLattice *l, size_t a, size_t b, size_t *out);

// Hasse diagram in DOT format.
//
// # Safety
// `l` must be a live lattice handle; `out` must be writable.
enum CdlStatus cdl_lattice_dot(const struct CdlLattice *l, char **out);

// Full verification report as JSON (same schema as `cdlattice verify`).
// `max_subgroups = 0` selects the default cap.
//
// # Safety
// `g` must be a live group handle; `out_json` must be writable.
enum CdlStatus cdl_verify_json(const struct CdlGroup *g, size_t max_subgroups, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CDLATTICE_H */
