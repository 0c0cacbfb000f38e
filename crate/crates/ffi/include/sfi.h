#ifndef SFI_H
#define SFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum SfiStatus {
  SFI_STATUS_OK = 0,
  SFI_STATUS_NULL_POINTER = 1,
  SFI_STATUS_INVALID_UTF8 = 2,
  SFI_STATUS_PARSE = 3,
  SFI_STATUS_INVALID_PARAM = 4,
  SFI_STATUS_GRAPH = 5,
  SFI_STATUS_PRECONDITION = 6,
  SFI_STATUS_CAP_EXCEEDED = 7,
  SFI_STATUS_INTERNAL = 8,
} SfiStatus;

// Opaque handle to a validated-on-demand graph.
typedef struct SfiGraph SfiGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after success.
// The pointer stays valid until the next call into this library on the
// same thread.
const char *sfi_last_error(void);

// Library version as a static string.
const char *sfi_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void sfi_string_free(char *s);

// Parses a graph from its JSON text.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SfiStatus sfi_graph_from_json(const char *json, struct SfiGraph **out);

// Releases a graph handle. Null is ignored.
//
// # Safety
// `g` must be null or a handle not yet freed.
void sfi_graph_free(struct SfiGraph *g);

// Writes 1 to `out` when the graph is fair and balanced, else 0.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum SfiStatus sfi_graph_is_valid(const struct SfiGraph *g, int *out);

// Violations of fairness and balance as a JSON array.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum SfiStatus sfi_graph_violations_json(const struct SfiGraph *g, char **out);

// Number of loops of length `n` at `basepoint`.
//
// # Safety
// `g` must be a live handle, `basepoint` a NUL-terminated string and
// `out` a valid pointer.
enum SfiStatus sfi_graph_loop_count(const struct SfiGraph *g,
                                    const char *basepoint,
                                    size_t n,
                                    size_t *out);

// Exact modular spectrum and factor type at `basepoint`, as JSON
// `{"spectrum": …, "factor_type": …}`. The graph must be valid.
//
// # Safety
// `g` must be a live handle, `basepoint` a NUL-terminated string and
// `out` a valid pointer.
enum SfiStatus sfi_graph_spectrum_json(const struct SfiGraph *g, const char *basepoint, char **out);

// The quantum integer `[n]` at loop value `delta`, as a rational string.
//
// # Safety
// `delta` must be a NUL-terminated string and `out` a valid pointer.
enum SfiStatus sfi_quantum_int(const char *delta, uint32_t n, char **out);

// Markov trace of the Jones-Wenzl projector on `n` strands at `delta`.
//
// # Safety
// `delta` must be a NUL-terminated string and `out` a valid pointer.
enum SfiStatus sfi_jones_wenzl_trace(const char *delta, size_t n, char **out);

// Quantum-group spectrum from comma-separated eigenvalues, as JSON
// `{"spectrum": …, "kac": bool}`.
//
// # Safety
// `eigs` must be a NUL-terminated string and `out` a valid pointer.
enum SfiStatus sfi_qg_spectrum_json(const char *eigs, char **out);

// Runs an `sfi` command line (`argv[0]` is the program name) and returns
// its exit code and captured output.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; the out-pointers must be
// valid.
enum SfiStatus sfi_run(int argc,
                       const char *const *argv,
                       int *exit_code,
                       char **out_stdout,
                       char **out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SFI_H */
