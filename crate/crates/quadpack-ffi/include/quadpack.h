#ifndef QUADPACK_H
#define QUADPACK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum QpMethod {
  QP_METHOD_VORONOI = 0,
  QP_METHOD_RIGHTANGLE = 1,
  QP_METHOD_KITE = 2,
  QP_METHOD_MAXANGLE = 3,
  QP_METHOD_PACK_ONLY = 4,
} QpMethod;

// Status of a call. The first four match the command-line exit codes.
typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_VALIDATION_FAILURE = 1,
  QP_STATUS_INPUT_ERROR = 2,
  QP_STATUS_GUARANTEE_VIOLATION = 3,
  QP_STATUS_NULL_POINTER = 4,
  QP_STATUS_BUFFER_TOO_SMALL = 5,
  QP_STATUS_PANIC = 6,
} QpStatus;

// A validated polygonal domain.
typedef struct QpPolygon QpPolygon;

// Output of one run: status, report and, for meshing methods, the mesh.
typedef struct QpResult QpResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread; empty if none. The
// pointer stays valid until the next failing call on this thread.
const char *qp_last_error(void);

// Library version as a static NUL-terminated string.
const char *qp_version(void);

// Build a polygon from interleaved coordinates.
//
// `outer_xy` holds `outer_len` points as x0, y0, x1, y1, ... Hole `k` has
// `hole_lens[k]` points, stored one hole after another in `holes_xy`.
// `holes_xy` and `hole_lens` may be null when `hole_count` is 0.
//
// # Safety
// Every pointer must be valid for the lengths given, and `out` writable.
enum QpStatus qp_polygon_new(const double *outer_xy,
                             size_t outer_len,
                             const double *holes_xy,
                             const size_t *hole_lens,
                             size_t hole_count,
                             struct QpPolygon **out);

// Build a polygon from polygon JSON,
// `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum QpStatus qp_polygon_from_json(const char *json, struct QpPolygon **out);

// Number of polygon vertices over all loops; 0 for null.
//
// # Safety
// `poly` must be null or a live handle.
size_t qp_polygon_vertex_count(const struct QpPolygon *poly);

// # Safety
// `poly` must be null or a handle not yet freed.
void qp_polygon_free(struct QpPolygon *poly);

// Pack and mesh `poly` with default settings.
//
// A result is stored in `out` whenever the run itself happened, including
// validation and guarantee failures, so its report can be inspected. The
// return value is the run's status.
//
// # Safety
// `poly` must be a live handle and `out` writable.
enum QpStatus qp_run(const struct QpPolygon *poly, enum QpMethod method, struct QpResult **out);

// # Safety
// `res` must be null or a handle not yet freed.
void qp_result_free(struct QpResult *res);

// Status the run finished with; [`QpStatus::NullPointer`] for null.
//
// # Safety
// `res` must be null or a live handle.
enum QpStatus qp_result_status(const struct QpResult *res);

// Mesh vertex count; 0 for null or when no mesh was produced.
//
// # Safety
// `res` must be null or a live handle.
size_t qp_result_vertex_count(const struct QpResult *res);

// Mesh quad count; 0 for null or when no mesh was produced.
//
// # Safety
// `res` must be null or a live handle.
size_t qp_result_quad_count(const struct QpResult *res);

// Packed circle count; 0 for null or a failed run.
//
// # Safety
// `res` must be null or a live handle.
size_t qp_result_circle_count(const struct QpResult *res);

// Copy vertex coordinates as x0, y0, x1, y1, ... into `xy`, which has
// room for `capacity` doubles.
//
// # Safety
// `res` must be a live handle and `xy` valid for `capacity` doubles.
enum QpStatus qp_result_vertices(const struct QpResult *res, double *xy, size_t capacity);

// Copy quad vertex indices, four per quad, counterclockwise, into `idx`,
// which has room for `capacity` entries.
//
// # Safety
// `res` must be a live handle and `idx` valid for `capacity` entries.
enum QpStatus qp_result_quads(const struct QpResult *res, size_t *idx, size_t capacity);

// Largest interior angle of the mesh in degrees; NaN without a mesh.
//
// # Safety
// `res` must be null or a live handle.
double qp_result_max_angle(const struct QpResult *res);

// Run report as JSON. Free with [`qp_string_free`]. Null for null input.
//
// # Safety
// `res` must be null or a live handle.
char *qp_result_report_json(const struct QpResult *res);

// Mesh as JSON. Free with [`qp_string_free`]. Null when there is no mesh.
//
// # Safety
// `res` must be null or a live handle.
char *qp_result_mesh_json(const struct QpResult *res);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void qp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADPACK_H */
