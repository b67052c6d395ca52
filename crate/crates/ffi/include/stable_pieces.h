#ifndef STABLE_PIECES_H
#define STABLE_PIECES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_ARGUMENT = 1,
  SP_STATUS_INVALID_UTF8 = 2,
  SP_STATUS_INVALID_CARTAN = 3,
  SP_STATUS_NOT_FINITE_TYPE = 4,
  SP_STATUS_NOT_DIAGRAM_AUTOMORPHISM = 5,
  SP_STATUS_NOT_MINIMAL = 6,
  SP_STATUS_PARSE = 7,
  SP_STATUS_OUT_OF_RANGE = 8,
  SP_STATUS_INTERNAL = 9,
  SP_STATUS_PANIC = 10,
} SpStatus;

/**
 * Opaque session handle.
 */
typedef struct SpSession SpSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session from a type string such as `"A2"` or `"A1xA1"` and an
 * automorphism such as `"1:2,2:1"` (NULL or `"id"` for the identity).
 *
 * # Safety
 * String arguments must be NUL-terminated or NULL; `out` must be writable.
 */
SpStatus sp_session_new_type(const char *type_name, const char *automorphism, SpSession **out);

/**
 * Creates a session from a row-major `rank x rank` Cartan matrix and an
 * optional automorphism given as `rank` 1-based images (NULL for identity).
 *
 * # Safety
 * `matrix` must point to `rank * rank` values and `mapping`, if not NULL,
 * to `rank` values; `out` must be writable.
 */
SpStatus sp_session_new_cartan(const int32_t *matrix,
                               size_t rank,
                               const uint32_t *mapping,
                               SpSession **out);

/**
 * Releases a session. NULL is ignored.
 *
 * # Safety
 * `s` must come from a constructor above and not be used afterwards.
 */
void sp_session_free(SpSession *s);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void sp_string_free(char *p);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *sp_last_error(void);

/**
 * Number of pieces.
 *
 * # Safety
 * `s` must be a live session and `out` writable.
 */
SpStatus sp_piece_count(const SpSession *s, size_t *out);

/**
 * JSON array of all pieces, `[{"J": [..], "w": [..], "dim": n, "j_inf": [..]}, ..]`.
 *
 * # Safety
 * `s` must be a live session and `out` writable.
 */
SpStatus sp_pieces_json(const SpSession *s, char **out);

/**
 * JSON object for the piece at `index` in canonical order.
 *
 * # Safety
 * `s` must be a live session and `out` writable.
 */
SpStatus sp_piece_json(const SpSession *s, size_t index, char **out);

/**
 * Dimension of a piece.
 *
 * # Safety
 * `s` must be a live session, `piece` NUL-terminated, `out` writable.
 */
SpStatus sp_piece_dimension(const SpSession *s, const char *piece, size_t *out);

/**
 * Whether piece `a` lies in the closure of piece `b`.
 *
 * # Safety
 * `s` must be a live session, `a` and `b` NUL-terminated, `out` writable.
 */
SpStatus sp_leq(const SpSession *s, const char *a, const char *b, bool *out);

/**
 * JSON array of the pieces in the closure of `piece`.
 *
 * # Safety
 * `s` must be a live session, `piece` NUL-terminated, `out` writable.
 */
SpStatus sp_closure_json(const SpSession *s, const char *piece, char **out);

/**
 * Hasse diagram of all pieces in DOT.
 *
 * # Safety
 * `s` must be a live session and `out` writable.
 */
SpStatus sp_hasse_dot(const SpSession *s, char **out);

/**
 * Cellular report for the closure of `piece` as JSON.
 *
 * # Safety
 * `s` must be a live session, `piece` NUL-terminated, `out` writable.
 */
SpStatus sp_cells_json(const SpSession *s, const char *piece, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STABLE_PIECES_H */
