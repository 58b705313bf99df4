#ifndef TOPO_TSP_H
#define TOPO_TSP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TtStatus {
  TT_STATUS_OK = 0,
  TT_STATUS_NULL_POINTER = 1,
  TT_STATUS_INVALID_ARGUMENT = 2,
  TT_STATUS_INVALID_INSTANCE = 3,
  TT_STATUS_INVALID_TOUR = 4,
  TT_STATUS_PARSE_ERROR = 5,
  TT_STATUS_SIZE_OUT_OF_RANGE = 6,
  TT_STATUS_IO_ERROR = 7,
  TT_STATUS_PANIC = 8,
} TtStatus;

// Barcode of a tour.
typedef struct TtBarcode TtBarcode;

// Problem instance.
typedef struct TtInstance TtInstance;

// One bar: an MST edge paired with a tour edge.
typedef struct TtBar {
  size_t mst_u;
  size_t mst_v;
  double birth;
  size_t tour_u;
  size_t tour_v;
  double death;
} TtBar;

typedef struct TtSolveStats {
  double length;
  uint64_t iterations;
  uint64_t trials;
  double wall_time;
  bool converged;
  bool hit_time_limit;
} TtSolveStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *tt_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *tt_version(void);

// Builds an instance from a row-major `n * n` symmetric distance matrix.
//
// # Safety
// `dist` must point to `n * n` readable doubles and `out` must be writable.
enum TtStatus tt_instance_from_matrix(size_t n, const double *dist, struct TtInstance **out);

// Parses a symmetric TSPLIB file held in memory.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be writable.
enum TtStatus tt_instance_from_tsplib(const uint8_t *data, size_t len, struct TtInstance **out);

// `n` uniform random points in the unit square with Euclidean distances.
//
// # Safety
// `out` must be writable.
enum TtStatus tt_instance_euclidean(size_t n, uint64_t seed, struct TtInstance **out);

// # Safety
// `inst` must be NULL or a handle from this library not yet freed.
void tt_instance_free(struct TtInstance *inst);

// Number of cities, 0 for NULL.
//
// # Safety
// `inst` must be NULL or a live handle.
size_t tt_instance_dimension(const struct TtInstance *inst);

// # Safety
// `inst` must be a live handle, `tour` must point to `len` indices and
// `out_length` must be writable.
enum TtStatus tt_tour_length(const struct TtInstance *inst,
                             const size_t *tour,
                             size_t len,
                             double *out_length);

// Penalty of the edge leaving each tour position; `out` receives `len`
// values.
//
// # Safety
// `inst` must be a live handle, `tour` must point to `len` indices and
// `out` to `len` writable doubles.
enum TtStatus tt_edge_penalties(const struct TtInstance *inst,
                                const size_t *tour,
                                size_t len,
                                double *out);

// Per-edge reward of a closed tour in visit order; `out` receives `len`
// values.
//
// # Safety
// As for [`tt_edge_penalties`].
enum TtStatus tt_reward_shaping(const struct TtInstance *inst,
                                const size_t *tour,
                                size_t len,
                                double *out);

// # Safety
// `inst` must be a live handle, `tour` must point to `len` indices and
// `out` must be writable.
enum TtStatus tt_barcode_compute(const struct TtInstance *inst,
                                 const size_t *tour,
                                 size_t len,
                                 struct TtBarcode **out);

// Number of bars, 0 for NULL.
//
// # Safety
// `bc` must be NULL or a live handle.
size_t tt_barcode_len(const struct TtBarcode *bc);

// Bar `k` in ascending order of the MST edge.
//
// # Safety
// `bc` must be a live handle and `out` writable.
enum TtStatus tt_barcode_bar(const struct TtBarcode *bc, size_t k, struct TtBar *out);

// # Safety
// `bc` must be NULL or a handle from this library not yet freed.
void tt_barcode_free(struct TtBarcode *bc);

// Improves `tour` in place with the named algorithm (for example "2opt"
// or "2opt-rtdl"). `stats` may be NULL.
//
// # Safety
// `inst` must be a live handle, `algo` a NUL-terminated string, `tour`
// must point to `len` writable indices and `stats` must be NULL or
// writable.
enum TtStatus tt_solve(const struct TtInstance *inst,
                       const char *algo,
                       size_t *tour,
                       size_t len,
                       double time_limit,
                       uint64_t seed,
                       struct TtSolveStats *stats);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPO_TSP_H */
