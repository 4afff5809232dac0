#ifndef EXKH_H
#define EXKH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ExkhStatus {
  EXKH_STATUS_OK = 0,
  EXKH_STATUS_NULL_POINTER = 1,
  EXKH_STATUS_INVALID_UTF8 = 2,
  EXKH_STATUS_PARSE_ERROR = 3,
  EXKH_STATUS_CAP_EXCEEDED = 4,
  EXKH_STATUS_INVALID_ARGUMENT = 5,
  EXKH_STATUS_INTERNAL = 6,
} ExkhStatus;

// Opaque diagram handle.
typedef struct ExkhDiagram ExkhDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses PD text (or a catalog name) into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` writable.
enum ExkhStatus exkh_diagram_parse(const char *text, struct ExkhDiagram **out);

// Releases a handle; null is ignored.
//
// # Safety
// `d` must come from this library and not be used afterwards.
void exkh_diagram_free(struct ExkhDiagram *d);

// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_crossing_count(const struct ExkhDiagram *d, size_t *out);

// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_component_count(const struct ExkhDiagram *d, size_t *out);

// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_writhe(const struct ExkhDiagram *d, int64_t *out);

// Canonical PD text.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_diagram_pd(const struct ExkhDiagram *d, char **out);

// `{"graph": {...}, "independence_number": "..."}`.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_lando_json(const struct ExkhDiagram *d, char **out);

// The `j_min` row by the Lando route; `ring` is `"Z"`, `"Q"`, `"F<p>"` or null.
//
// # Safety
// `d` must be a live handle, `ring` null or a valid string, `out` writable.
enum ExkhStatus exkh_extreme_json(const struct ExkhDiagram *d, const char *ring, char **out);

// The `j_min` row by enumerating enhanced states.
//
// # Safety
// As [`exkh_extreme_json`].
enum ExkhStatus exkh_extreme_brute_json(const struct ExkhDiagram *d, const char *ring, char **out);

// The `j_max` row.
//
// # Safety
// As [`exkh_extreme_json`].
enum ExkhStatus exkh_extreme_max_json(const struct ExkhDiagram *d, const char *ring, char **out);

// The full cohomology table.
//
// # Safety
// As [`exkh_extreme_json`].
enum ExkhStatus exkh_khovanov_json(const struct ExkhDiagram *d, const char *ring, char **out);

// The Jones polynomial in `t`, e.g. `-t^-4 + t^-3 + t^-1`.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum ExkhStatus exkh_jones(const struct ExkhDiagram *d, char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void exkh_string_free(char *s);

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next call into the library from the same thread.
const char *exkh_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EXKH_H */
