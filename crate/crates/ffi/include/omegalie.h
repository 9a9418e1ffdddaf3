#ifndef OMEGALIE_H
#define OMEGALIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Continue over a quadratic extension instead of failing.
#define OL_ALLOW_EXTENSION 1

// Keep α as computed instead of the pair representative.
#define OL_STRICT_C_LABELS 2

typedef enum OlStatus {
  OL_STATUS_OK = 0,
  // A required pointer argument was null.
  OL_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  OL_STATUS_INVALID_UTF8 = 2,
  // Malformed algebra, ideal, label or field text.
  OL_STATUS_PARSE = 3,
  // Well-formed input outside the domain: not ω-Lie, ω = 0, wrong dimension.
  OL_STATUS_INVALID = 4,
  // A quadratic field extension is needed and was not allowed.
  OL_STATUS_EXTENSION_REQUIRED = 5,
  // A verification check or internal invariant failed.
  OL_STATUS_CHECK_FAILED = 6,
  // A panic was caught at the boundary.
  OL_STATUS_PANIC = 7,
} OlStatus;

typedef enum OlSection {
  OL_SECTION_ALL = 0,
  OL_SECTION_VARIETY = 1,
  OL_SECTION_CLASSIFICATION = 2,
  OL_SECTION_COMPONENTS = 3,
} OlSection;

// A parsed algebra with its field and ω.
typedef struct OlAlgebra OlAlgebra;

// A label, witness and case trace.
typedef struct OlClassification OlClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an algebra file. Structural checks only; see `ol_algebra_validate`.
//
// # Safety
// `text` is a NUL-terminated string; `out` is writable.
enum OlStatus ol_algebra_parse(const char *text, struct OlAlgebra **out);

// The canonical algebra for `A`, `B`, `D` or `C:<alpha>` over `field`
// (`Q`, `Fp:<p>`; null means `Q`).
//
// # Safety
// `label` and a non-null `field` are NUL-terminated strings; `out` is writable.
enum OlStatus ol_algebra_canonical(const char *label, const char *field, struct OlAlgebra **out);

// Writes 1 to `valid` if the ω-Jacobi identity and skewness hold, else 0;
// the failure description is then available from `ol_last_error_message`.
//
// # Safety
// `alg` is a live handle; `valid` is writable.
enum OlStatus ol_algebra_validate(const struct OlAlgebra *alg, int32_t *valid);

// The algebra file text of `alg`.
//
// # Safety
// `alg` is a live handle; `out` is writable.
enum OlStatus ol_algebra_to_string(const struct OlAlgebra *alg, char **out);

// # Safety
// `alg` is null or a handle not yet freed.
void ol_algebra_free(struct OlAlgebra *alg);

// Classifies a 3-dimensional non-Lie ω-Lie algebra. `flags` is a bitwise
// or of `OL_ALLOW_EXTENSION` and `OL_STRICT_C_LABELS`.
//
// # Safety
// `alg` is a live handle; `out` is writable.
enum OlStatus ol_classify(const struct OlAlgebra *alg,
                          uint32_t flags,
                          struct OlClassification **out);

// The label text: `A`, `B`, `D` or `C:<alpha>`.
//
// # Safety
// `result` is a live handle; `out` is writable.
enum OlStatus ol_classification_label(const struct OlClassification *result, char **out);

// The replayable record form: `label`, `field`, `extension`, `witness`,
// then one `step` line per move.
//
// # Safety
// `result` is a live handle; `out` is writable.
enum OlStatus ol_classification_to_string(const struct OlClassification *result, char **out);

// # Safety
// `result` is null or a handle not yet freed.
void ol_classification_free(struct OlClassification *result);

// Writes 1 to `isomorphic` and the witness matrix to `witness` (if non-null)
// when an isomorphism exists; otherwise 0 and the reason to `witness`.
//
// # Safety
// `first` and `second` are live handles; `isomorphic` is writable; `witness`
// is null or writable.
enum OlStatus ol_iso(const struct OlAlgebra *first,
                     const struct OlAlgebra *second,
                     int32_t allow_extension,
                     int32_t *isomorphic,
                     char **witness);

// The reduced Gröbner basis of an ideal file, as an ideal file.
//
// # Safety
// `ideal_text` is a NUL-terminated string; `out` is writable.
enum OlStatus ol_ideal_groebner(const char *ideal_text, char **out);

// Runs a verification suite over `Q` and `Fp:101` and writes the report
// table. Returns `CheckFailed` if any check fails; the report is written
// either way.
//
// # Safety
// `report` is writable.
enum OlStatus ol_verify(enum OlSection section, char **report);

// # Safety
// `s` is null or a string returned by this library and not yet freed.
void ol_string_free(char *s);

// The message of the last failure on this thread; empty after success.
// Valid until the next call into this library on the same thread.
const char *ol_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OMEGALIE_H */
