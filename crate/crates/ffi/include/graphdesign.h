#ifndef GRAPHDESIGN_H
#define GRAPHDESIGN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

// Result of a C API call.
typedef enum GdStatus {
  GD_STATUS_OK = 0,
  // A required pointer argument was NULL.
  GD_STATUS_NULL_POINTER = 1,
  // Malformed input: bad graph, ordering, k, JSON, sizes.
  GD_STATUS_INVALID_INPUT = 2,
  // The weights are not a design (or have a negative entry).
  GD_STATUS_NOT_A_DESIGN = 3,
  // A size guard refused the input.
  GD_STATUS_GUARD_EXCEEDED = 4,
  // Eigensolver, LP or orthonormality failure.
  GD_STATUS_NUMERICAL = 5,
  // The graph is not connected.
  GD_STATUS_DISCONNECTED = 6,
  // An internal panic was caught at the boundary.
  GD_STATUS_PANIC = 7,
} GdStatus;

// Opaque weighted graph.
typedef struct GdGraph GdGraph;

// Opaque grouped Laplacian eigendecomposition.
typedef struct GdSpectrum GdSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *gd_last_error(void);

// Library version as a static NUL-terminated string.
const char *gd_version(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void gd_string_free(char *s);

// Builds a graph on `n` vertices from `edge_count` edges `(from[e], to[e])`
// with weights `weight[e] > 0`.
//
// # Safety
// The three arrays must hold `edge_count` readable elements; `out` must be
// writable.
enum GdStatus gd_graph_new(size_t n,
                           const size_t *from,
                           const size_t *to,
                           const double *weight,
                           size_t edge_count,
                           struct GdGraph **out);

// Parses a graph file (`{"n": .., "edges": [[i, j, w], ..]}`, 1-based).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum GdStatus gd_graph_from_json(const char *json, struct GdGraph **out);

// Serializes a graph in the graph file format.
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum GdStatus gd_graph_to_json(const struct GdGraph *g, char **out);

// Two unit-weight `n`-cliques joined by one edge of weight `w`.
//
// # Safety
// `out` must be writable.
enum GdStatus gd_barbell_new(size_t n, double w, struct GdGraph **out);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph handle.
size_t gd_graph_vertex_count(const struct GdGraph *g);

// Number of edges, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph handle.
size_t gd_graph_edge_count(const struct GdGraph *g);

// # Safety
// `g` must be NULL or a graph handle not yet freed.
void gd_graph_free(struct GdGraph *g);

// Grouped eigendecomposition of a connected graph's Laplacian.
//
// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum GdStatus gd_spectrum_new(const struct GdGraph *g, double group_tol, struct GdSpectrum **out);

// # Safety
// `s` must be NULL or a spectrum handle not yet freed.
void gd_spectrum_free(struct GdSpectrum *s);

// Number of distinct eigenspaces, or 0 for NULL.
//
// # Safety
// `s` must be NULL or a live spectrum handle.
size_t gd_spectrum_space_count(const struct GdSpectrum *s);

// Eigenvalue and multiplicity of eigenspace `index` (ascending order).
//
// # Safety
// `s` must be a live spectrum handle; `value` and `multiplicity` must be
// writable.
enum GdStatus gd_spectrum_eigenspace(const struct GdSpectrum *s,
                                     size_t index,
                                     double *value,
                                     size_t *multiplicity);

// Total dimension of the first `k` eigenspaces in the ordering. A NULL
// `ordering` means ascending eigenvalues.
//
// # Safety
// `s` must be a live spectrum handle; `ordering` NULL or `ordering_len`
// readable elements; `out` writable.
enum GdStatus gd_facet_bound(const struct GdSpectrum *s,
                             const size_t *ordering,
                             size_t ordering_len,
                             size_t k,
                             size_t *out);

// Checks that `weights` (length `n`) is a positively weighted k-design at
// tolerance `tol`. The residual is written whenever it could be computed.
//
// # Safety
// `s` live; `ordering` NULL or readable; `weights` readable for `n`
// elements; `residual` NULL or writable.
enum GdStatus gd_design_verify(const struct GdSpectrum *s,
                               const size_t *ordering,
                               size_t ordering_len,
                               size_t k,
                               const double *weights,
                               size_t n,
                               double tol,
                               double *residual);

// Writes a design found by linear programming into `weights_out` (length
// `n`, the vertex count). Weights sum to one.
//
// # Safety
// `s` live; `ordering` NULL or readable; `weights_out` writable for `n`
// elements.
enum GdStatus gd_design_find(const struct GdSpectrum *s,
                             const size_t *ordering,
                             size_t ordering_len,
                             size_t k,
                             double *weights_out,
                             size_t n);

// Enumerates all minimal k-designs and returns the JSON enumeration report
// (1-based labels). `max_support == 0` searches up to the facet bound.
//
// # Safety
// `s` live; `ordering` NULL or readable; `out` writable.
enum GdStatus gd_design_enumerate_json(const struct GdSpectrum *s,
                                       const size_t *ordering,
                                       size_t ordering_len,
                                       size_t k,
                                       size_t max_support,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHDESIGN_H */
