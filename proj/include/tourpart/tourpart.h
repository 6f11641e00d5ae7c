/* C interface to the tourpart library.
 *
 * Every function returns a tp_status.  On failure a message for the calling
 * thread is available from tp_last_error() until the next failing call.
 * Functions that produce a result handle always set *out on TP_OK.  On
 * TP_NOT_FOUND or TP_BUDGET *out holds the partial result when there is
 * one (partitions, spanning linkages) and NULL otherwise; on any other
 * status it is NULL.  Handles are immutable and may be shared
 * between threads.  Strings returned through char** are freed with
 * tp_string_free; strings returned as const char* live as long as their
 * handle.
 */
#ifndef TOURPART_H
#define TOURPART_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TP_API __declspec(dllexport)
#else
#define TP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_NOT_FOUND = 1,        /* proven infeasible, nothing found, or not verified */
  TP_BUDGET = 2,           /* search budget exhausted; answer unknown */
  TP_INVALID_ARGUMENT = 3,
  TP_PARSE_ERROR = 4,
  TP_IO_ERROR = 5,
  TP_PRECONDITION = 6,     /* quantitative hypothesis fails on this instance */
  TP_STAGE_ERROR = 7,      /* a partition pipeline stage could not complete */
  TP_INVARIANT = 8,        /* internal invariant violated */
  TP_INTERNAL = 9
} tp_status;

typedef enum tp_format { TP_FORMAT_EDGE_LIST = 0, TP_FORMAT_COMPACT = 1, TP_FORMAT_DOT = 2 } tp_format;
typedef enum tp_verdict { TP_VERDICT_NO = 0, TP_VERDICT_YES = 1, TP_VERDICT_UNKNOWN = 2 } tp_verdict;
typedef enum tp_mode { TP_MODE_PIPELINE = 0, TP_MODE_SEARCH = 1, TP_MODE_AUTO = 2 } tp_mode;

typedef struct tp_tournament tp_tournament;
typedef struct tp_digraph tp_digraph;
typedef struct tp_params tp_params;
typedef struct tp_paths tp_paths;
typedef struct tp_partition tp_partition;

TP_API const char* tp_version(void);
TP_API const char* tp_status_name(tp_status s);
TP_API const char* tp_last_error(void);
/* Line and column of the last TP_PARSE_ERROR on this thread, 0 otherwise. */
TP_API void tp_last_error_position(int* line, int* column);
TP_API void tp_string_free(char* s);

/* ----------------------------------------------------------- tournaments */

TP_API tp_status tp_tournament_random(int n, uint64_t seed, tp_tournament** out);
TP_API tp_status tp_tournament_paley(int q, tp_tournament** out);
TP_API tp_status tp_tournament_transitive(int n, tp_tournament** out);
TP_API tp_status tp_tournament_layered(int layers, int width, uint64_t seed, tp_tournament** out);
/* Edge-list or compact text, detected from the header. */
TP_API tp_status tp_tournament_parse(const char* text, size_t length, tp_tournament** out);
TP_API tp_status tp_tournament_load(const char* path, tp_tournament** out);
TP_API tp_status tp_tournament_format(const tp_tournament* t, tp_format f, char** out);
TP_API tp_status tp_tournament_save(const tp_tournament* t, tp_format f, const char* path);
TP_API void tp_tournament_free(tp_tournament* t);

TP_API int tp_tournament_size(const tp_tournament* t);
TP_API int tp_tournament_has_edge(const tp_tournament* t, int u, int v);
TP_API tp_status tp_tournament_degrees(const tp_tournament* t, int v, int* in_degree, int* out_degree);

/* H for subdivisions: any loopless digraph in edge-list format. */
TP_API tp_status tp_digraph_parse(const char* text, size_t length, tp_digraph** out);
TP_API tp_status tp_digraph_load(const char* path, tp_digraph** out);
TP_API int tp_digraph_size(const tp_digraph* g);
TP_API void tp_digraph_free(tp_digraph* g);

/* ---------------------------------------------------------- connectivity */

/* cap < 0: exact value; otherwise min(kappa, cap). */
TP_API tp_status tp_vertex_connectivity(const tp_tournament* t, int cap, int* out);
TP_API tp_status tp_is_strongly_k_connected(const tp_tournament* t, int k, int* out);
/* Exhaustive over endpoint choices; intended for small tournaments. */
TP_API tp_status tp_is_k_linked(const tp_tournament* t, int k, uint64_t node_budget, tp_verdict* out);

/* ----------------------------------------------------------------- paths */

/* Shortest x -> y path avoiding `avoid`, then deletion of its vertices
 * except the kept endpoints.  TP_NOT_FOUND when no such path exists. */
TP_API tp_status tp_carve(const tp_tournament* t, int x, int y, const int* avoid, size_t avoid_count, int k,
                          int keep_x, int keep_y, tp_paths** out);
/* pairs holds 2*count ids x0 y0 x1 y1 ...  Without `spanning`, vertex-
 * disjoint paths within node_budget (TP_NOT_FOUND means proven infeasible);
 * with it, paths covering every vertex. */
TP_API tp_status tp_link(const tp_tournament* t, const int* pairs, size_t count, int spanning, uint64_t node_budget,
                         tp_paths** out);
/* phi[i] is the branch vertex of H-vertex i. */
TP_API tp_status tp_subdivide(const tp_tournament* t, const tp_digraph* h, const int* phi, size_t phi_count, int k,
                              tp_paths** out);

TP_API size_t tp_paths_count(const tp_paths* p);
TP_API size_t tp_paths_length(const tp_paths* p, size_t i); /* vertex count of path i */
TP_API const int* tp_paths_vertices(const tp_paths* p, size_t i);
/* Edge of H realised by path i (subdivisions only; -1 otherwise). */
TP_API void tp_paths_edge(const tp_paths* p, size_t i, int* from, int* to);
/* Whether the connectivity hypothesis behind the guarantee was met. */
TP_API int tp_paths_guaranteed(const tp_paths* p);
/* min(kappa(remainder), k) for carve and subdivide; -1 for link. */
TP_API int tp_paths_remainder_connectivity(const tp_paths* p);
/* Remainder vertex ids in increasing order (carve and subdivide). */
TP_API size_t tp_paths_remainder_size(const tp_paths* p);
TP_API const int* tp_paths_remainder(const tp_paths* p);
/* Short outcome label, e.g. "ok", "no path", "budget exhausted". */
TP_API const char* tp_paths_status(const tp_paths* p);
TP_API void tp_paths_free(tp_paths* p);

/* ------------------------------------------------------------- partition */

TP_API tp_status tp_params_paper(int k, tp_params** out);
TP_API tp_status tp_params_relaxed(int k, int n, tp_params** out);
/* key=value overrides applied on top of `base`. */
TP_API tp_status tp_params_parse(const char* text, size_t length, const tp_params* base, tp_params** out);
TP_API tp_status tp_params_load(const char* path, const tp_params* base, tp_params** out);
TP_API tp_status tp_params_format(const tp_params* p, char** out);
TP_API const char* tp_params_fingerprint(const tp_params* p);
TP_API int tp_params_theorem_backed(const tp_params* p);
TP_API void tp_params_free(tp_params* p);

typedef struct tp_search_options {
  uint64_t seed;
  int restarts;
  int steps_per_restart; /* 0: 4n */
  int threads;
} tp_search_options;
TP_API tp_search_options tp_search_options_default(void);

/* TP_OK iff the returned partition is verified.  `params` NULL selects the
 * relaxed parameters for (k, n); `options` NULL the defaults. */
TP_API tp_status tp_partition_run(const tp_tournament* t, int k, tp_mode mode, const tp_params* params,
                                  const tp_search_options* options, tp_partition** out);
/* side[v] is 1 or 2. */
TP_API tp_status tp_partition_verify(const tp_tournament* t, const int* side, size_t n, int k, tp_partition** out);

TP_API int tp_partition_verified(const tp_partition* p);
TP_API int tp_partition_side(const tp_partition* p, int v);
/* T[V1], T[V2], T[V1,V2]; *exact is 0 when each value is only min(kappa, k). */
TP_API void tp_partition_connectivity(const tp_partition* p, int out[3], int* exact);
TP_API const char* tp_partition_mode(const tp_partition* p);
TP_API const char* tp_partition_diagnostic(const tp_partition* p);
TP_API const char* tp_partition_params_fingerprint(const tp_partition* p);
TP_API tp_status tp_partition_format(const tp_partition* p, char** out);
TP_API size_t tp_partition_audit_count(const tp_partition* p);
TP_API tp_status tp_partition_audit(const tp_partition* p, size_t i, const char** stage, const char** check,
                                    int* passed, int* theorem_backed, const char** detail);
TP_API void tp_partition_free(tp_partition* p);

#ifdef __cplusplus
}
#endif

#endif
