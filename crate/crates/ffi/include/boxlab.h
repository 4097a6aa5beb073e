#ifndef BOXLAB_H
#define BOXLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BoxlabStatus {
  BOXLAB_STATUS_OK = 0,
  BOXLAB_STATUS_PARSE = 2,
  BOXLAB_STATUS_PARAMETER = 3,
  BOXLAB_STATUS_VERIFICATION = 4,
  BOXLAB_STATUS_RANDOMIZED = 5,
  BOXLAB_STATUS_NULL_POINTER = 6,
  BOXLAB_STATUS_PANIC = 7,
} BoxlabStatus;

typedef struct BoxlabCertificate BoxlabCertificate;

typedef struct BoxlabGraph BoxlabGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call.
 */
const char *boxlab_last_error(void);

/**
 * # Safety
 * `edges` points to `2 * m` vertex ids (pairs `u, v`); `out` is writable.
 */
enum BoxlabStatus boxlab_graph_new(size_t n,
                                   const size_t *edges,
                                   size_t m,
                                   struct BoxlabGraph **out);

/**
 * Parses the `graph <n> <m>` text format.
 *
 * # Safety
 * `src` is a NUL-terminated string; `out` is writable.
 */
enum BoxlabStatus boxlab_graph_parse(const char *src, struct BoxlabGraph **out);

/**
 * # Safety
 * `g` is NULL or a live handle from this library.
 */
size_t boxlab_graph_vertex_count(const struct BoxlabGraph *g);

/**
 * # Safety
 * `g` is NULL or a handle not yet freed.
 */
void boxlab_graph_free(struct BoxlabGraph *g);

/**
 * Bounded-degree construction.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum BoxlabStatus boxlab_degree_rep(const struct BoxlabGraph *g,
                                    uint64_t seed,
                                    struct BoxlabCertificate **out);

/**
 * Pair-elimination construction, at most `max(1, n/2)` dimensions.
 *
 * # Safety
 * `g` is a live graph handle; `out` is writable.
 */
enum BoxlabStatus boxlab_pair_elimination(const struct BoxlabGraph *g,
                                          struct BoxlabCertificate **out);

/**
 * Exact boxicity for graphs with at most 8 vertices.
 *
 * # Safety
 * `g` is a live graph handle; `value` is writable.
 */
enum BoxlabStatus boxlab_exact_boxicity(const struct BoxlabGraph *g, size_t *value);

/**
 * # Safety
 * `src` is a NUL-terminated JSON string; `out` is writable.
 */
enum BoxlabStatus boxlab_certificate_from_json(const char *src, struct BoxlabCertificate **out);

/**
 * JSON text of the certificate; release with [`boxlab_string_free`].
 *
 * # Safety
 * `c` is NULL or a live certificate handle.
 */
char *boxlab_certificate_to_json(const struct BoxlabCertificate *c);

/**
 * # Safety
 * `c` is NULL or a live certificate handle.
 */
size_t boxlab_certificate_dimension(const struct BoxlabCertificate *c);

/**
 * # Safety
 * `c` is NULL or a live certificate handle.
 */
size_t boxlab_certificate_target_dimension(const struct BoxlabCertificate *c);

/**
 * Checks the certificate's boxes against `g`. `violations` (may be NULL)
 * receives the number of offending pairs.
 *
 * # Safety
 * `c` and `g` are live handles; `violations` is NULL or writable.
 */
enum BoxlabStatus boxlab_certificate_verify(const struct BoxlabCertificate *c,
                                            const struct BoxlabGraph *g,
                                            size_t *violations);

/**
 * # Safety
 * `c` is NULL or a handle not yet freed.
 */
void boxlab_certificate_free(struct BoxlabCertificate *c);

/**
 * # Safety
 * `s` is NULL or a string returned by this library and not yet freed.
 */
void boxlab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOXLAB_H */
