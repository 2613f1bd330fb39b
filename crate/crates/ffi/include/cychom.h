#ifndef CYCHOM_H
#define CYCHOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Success.
 */
#define CYCHOM_OK 0

/*
 Malformed or invalid input (parse or validation failure).
 */
#define CYCHOM_INVALID 1

/*
 A size cap refused the computation.
 */
#define CYCHOM_SIZE_CAP 2

/*
 Periodic homology could not be established from the truncation.
 */
#define CYCHOM_NOT_ESTABLISHED 3

/*
 A required pointer argument was null.
 */
#define CYCHOM_NULL_POINTER 4

/*
 The output buffer is shorter than required.
 */
#define CYCHOM_BUFFER_TOO_SMALL 5

/*
 Internal failure (a bug); see the error message.
 */
#define CYCHOM_INTERNAL 6

/*
 A validated finite-dimensional algebra.
 */
typedef struct CychomAlgebra CychomAlgebra;

/*
 Homology of one algebra up to a fixed degree; results are cached.
 */
typedef struct CychomEngine CychomEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Version string of the library; static, never freed.
 */
const char *cychom_version(void);

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into the library on this thread.
 */
const char *cychom_last_error(void);

/*
 Parses an algebra from its JSON description. With `validate` nonzero,
 associativity and the unit are checked. The algebra dimension cap is
 `dim_cap` (0 for the library default).

 # Safety
 `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
int32_t cychom_algebra_from_json(const char *json,
                                 int32_t validate,
                                 size_t dim_cap,
                                 struct CychomAlgebra **out);

/*
 Dimension of the algebra, or 0 for a null handle.

 # Safety
 `a` must be null or a live handle.
 */
size_t cychom_algebra_dim(const struct CychomAlgebra *a);

/*
 # Safety
 `a` must be null or a handle not yet freed.
 */
void cychom_algebra_free(struct CychomAlgebra *a);

/*
 Prepares homology computations for `a` up to `max_degree`. Chain spaces
 larger than `max_chain_dim` (0 for the library default) are refused with
 `CYCHOM_SIZE_CAP`.

 # Safety
 `a` must be a live handle and `out` a valid pointer.
 */
int32_t cychom_engine_new(const struct CychomAlgebra *a,
                          size_t max_degree,
                          size_t max_chain_dim,
                          struct CychomEngine **out);

/*
 Highest degree the engine reports.

 # Safety
 `e` must be null or a live handle.
 */
size_t cychom_engine_max_degree(const struct CychomEngine *e);

/*
 # Safety
 `e` must be null or a handle not yet freed.
 */
void cychom_engine_free(struct CychomEngine *e);

/*
 Writes `dim HH_0 … dim HH_max_degree` to `out[0..=max_degree]`.

 # Safety
 `e` must be a live handle and `out` valid for `len` writes.
 */
int32_t cychom_hochschild_dims(const struct CychomEngine *e, size_t *out, size_t len);

/*
 Writes `dim HC_0 … dim HC_max_degree` to `out[0..=max_degree]`.

 # Safety
 `e` must be a live handle and `out` valid for `len` writes.
 */
int32_t cychom_cyclic_dims(const struct CychomEngine *e, size_t *out, size_t len);

/*
 Even and odd periodic cyclic homology, read off the stabilized cyclic
 groups. Returns `CYCHOM_NOT_ESTABLISHED` (outputs untouched) when the
 truncation carries no stabilization certificate. `certificate` may be
 null; otherwise it receives the certified degree `N`.

 # Safety
 `e` must be a live handle; `even` and `odd` valid pointers.
 */
int32_t cychom_periodic_dims(const struct CychomEngine *e,
                             size_t *even,
                             size_t *odd,
                             size_t *certificate);

/*
 Runs the command-line tool in-process. `argv` excludes the program
 name. The report (standard output) is returned in `*report`, to be
 released with [`cychom_string_free`]. Returns the tool's exit code
 (0 ok, 1 invalid input, 2 size cap, 3 not established) or
 `CYCHOM_NULL_POINTER`/`CYCHOM_INTERNAL` (as negatives) on misuse.

 # Safety
 `argv` must point to `argc` valid NUL-terminated strings; `report` must
 be a valid pointer.
 */
int32_t cychom_run(const char *const *argv, size_t argc, char **report);

/*
 Releases a string returned by the library.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void cychom_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCHOM_H */
