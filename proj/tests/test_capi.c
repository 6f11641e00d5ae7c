/* Exercises the C interface from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "tourpart/tourpart.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void test_tournaments(void) {
  tp_tournament *t = NULL, *back = NULL;
  char* text = NULL;
  EXPECT(tp_tournament_random(30, 7, &t) == TP_OK);
  EXPECT(tp_tournament_size(t) == 30);
  EXPECT(tp_tournament_format(t, TP_FORMAT_COMPACT, &text) == TP_OK);
  EXPECT(tp_tournament_parse(text, strlen(text), &back) == TP_OK);
  for (int u = 0; u < 30; ++u)
    for (int v = 0; v < 30; ++v) EXPECT(tp_tournament_has_edge(t, u, v) == tp_tournament_has_edge(back, u, v));
  tp_string_free(text);
  tp_tournament_free(back);

  int in = -1, out = -1;
  EXPECT(tp_tournament_degrees(t, 3, &in, &out) == TP_OK);
  EXPECT(in + out == 29);
  EXPECT(tp_tournament_degrees(t, 30, &in, &out) == TP_INVALID_ARGUMENT);
  tp_tournament_free(t);

  const char* bad = "n 3\n0 1\n1 q\n";
  t = (tp_tournament*)1;
  EXPECT(tp_tournament_parse(bad, strlen(bad), &t) == TP_PARSE_ERROR);
  EXPECT(t == NULL);
  int line = 0, col = 0;
  tp_last_error_position(&line, &col);
  EXPECT(line == 3 && col == 3);
  EXPECT(strstr(tp_last_error(), "vertex id") != NULL);

  EXPECT(tp_tournament_paley(9, &t) == TP_INVALID_ARGUMENT);
  EXPECT(tp_tournament_load("/nonexistent/file", &t) == TP_IO_ERROR);
  EXPECT(tp_tournament_random(10, 1, NULL) == TP_INVALID_ARGUMENT);
}

static void test_connectivity(void) {
  tp_tournament* t = NULL;
  int kappa = -1, yes = -1;
  tp_verdict v;
  EXPECT(tp_tournament_paley(7, &t) == TP_OK);
  EXPECT(tp_vertex_connectivity(t, -1, &kappa) == TP_OK && kappa == 3);
  EXPECT(tp_vertex_connectivity(t, 2, &kappa) == TP_OK && kappa == 2);
  EXPECT(tp_is_strongly_k_connected(t, 3, &yes) == TP_OK && yes == 1);
  EXPECT(tp_is_strongly_k_connected(t, 4, &yes) == TP_OK && yes == 0);
  EXPECT(tp_is_k_linked(t, 1, 1000000, &v) == TP_OK && v == TP_VERDICT_YES);
  tp_tournament_free(t);
}

static void test_paths(void) {
  tp_tournament* t = NULL;
  tp_paths* p = NULL;
  EXPECT(tp_tournament_transitive(6, &t) == TP_OK);
  EXPECT(tp_carve(t, 0, 3, NULL, 0, 0, 1, 1, &p) == TP_OK);
  EXPECT(tp_paths_count(p) == 1 && tp_paths_length(p, 0) == 2);
  EXPECT(tp_paths_vertices(p, 0)[0] == 0 && tp_paths_vertices(p, 0)[1] == 3);
  EXPECT(tp_paths_remainder_size(p) == 6);
  tp_paths_free(p);
  EXPECT(tp_carve(t, 3, 0, NULL, 0, 1, 0, 0, &p) == TP_NOT_FOUND && p == NULL);

  const int pairs[] = {5, 0, 1, 2};
  EXPECT(tp_link(t, pairs, 2, 0, 100000, &p) == TP_NOT_FOUND && p == NULL);
  const int chain[] = {0, 5};
  EXPECT(tp_link(t, chain, 1, 1, 100000, &p) == TP_OK);
  EXPECT(tp_paths_length(p, 0) == 6);
  EXPECT(strcmp(tp_paths_status(p), "ok") == 0);
  tp_paths_free(p);
  tp_tournament_free(t);

  tp_digraph* h = NULL;
  const char* tri = "n 3\n0 1\n1 2\n2 0\n";
  EXPECT(tp_digraph_parse(tri, strlen(tri), &h) == TP_OK);
  EXPECT(tp_tournament_random(80, 5, &t) == TP_OK);
  const int phi[] = {10, 20, 30};
  EXPECT(tp_subdivide(t, h, phi, 3, 1, &p) == TP_OK);
  EXPECT(tp_paths_count(p) == 3);
  EXPECT(tp_paths_remainder_connectivity(p) == 1);
  int a = 0, b = 0;
  tp_paths_edge(p, 0, &a, &b);
  EXPECT(a >= 0 && b >= 0);
  tp_paths_free(p);
  const int dup_phi[] = {10, 10, 30};
  EXPECT(tp_subdivide(t, h, dup_phi, 3, 1, &p) == TP_INVALID_ARGUMENT);
  tp_digraph_free(h);
  tp_tournament_free(t);
}

static void test_partition(void) {
  tp_tournament* t = NULL;
  tp_partition* p = NULL;
  tp_params *params = NULL, *tweaked = NULL;
  tp_search_options so = tp_search_options_default();
  so.seed = 4;

  EXPECT(tp_tournament_random(40, 9, &t) == TP_OK);
  EXPECT(tp_partition_run(t, 2, TP_MODE_SEARCH, NULL, &so, &p) == TP_OK);
  EXPECT(tp_partition_verified(p) == 1);
  EXPECT(strcmp(tp_partition_mode(p), "search") == 0);
  int kappa[3], exact = 0;
  tp_partition_connectivity(p, kappa, &exact);
  EXPECT(exact == 1 && kappa[0] >= 2 && kappa[1] >= 2 && kappa[2] >= 2);

  int side[40];
  for (int v = 0; v < 40; ++v) side[v] = tp_partition_side(p, v);
  tp_partition* again = NULL;
  EXPECT(tp_partition_verify(t, side, 40, 2, &again) == TP_OK);
  tp_partition_free(again);
  side[0] = 3;
  EXPECT(tp_partition_verify(t, side, 40, 2, &again) == TP_INVALID_ARGUMENT && again == NULL);
  tp_partition_free(p);

  EXPECT(tp_params_paper(1, &params) == TP_OK);
  EXPECT(tp_params_theorem_backed(params) == 1);
  EXPECT(tp_partition_run(t, 1, TP_MODE_PIPELINE, params, NULL, &p) == TP_STAGE_ERROR && p == NULL);
  EXPECT(strstr(tp_last_error(), "infeasible: requires") != NULL);
  const char* override = "c = 4\n";
  EXPECT(tp_params_parse(override, strlen(override), params, &tweaked) == TP_OK);
  EXPECT(tp_params_theorem_backed(tweaked) == 0);
  EXPECT(strcmp(tp_params_fingerprint(tweaked), tp_params_fingerprint(params)) != 0);
  const char* unknown = "colour = 4\n";
  tp_params* none = NULL;
  EXPECT(tp_params_parse(unknown, strlen(unknown), params, &none) == TP_PARSE_ERROR && none == NULL);
  tp_params_free(tweaked);
  tp_params_free(params);
  tp_tournament_free(t);

  EXPECT(tp_tournament_transitive(20, &t) == TP_OK);
  so.restarts = 2;
  EXPECT(tp_partition_run(t, 1, TP_MODE_SEARCH, NULL, &so, &p) == TP_NOT_FOUND);
  EXPECT(p != NULL && tp_partition_verified(p) == 0);
  EXPECT(strncmp(tp_partition_diagnostic(p), "none found", 10) == 0);
  tp_partition_free(p);
  tp_tournament_free(t);

  /* Relaxed pipeline end to end, with its audit trail. */
  EXPECT(tp_tournament_random(1500, 1, &t) == TP_OK);
  EXPECT(tp_partition_run(t, 1, TP_MODE_PIPELINE, NULL, NULL, &p) == TP_OK);
  EXPECT(strcmp(tp_partition_mode(p), "pipeline") == 0);
  EXPECT(tp_partition_audit_count(p) > 100);
  for (size_t i = 0; i < tp_partition_audit_count(p); ++i) {
    const char *stage, *check, *detail;
    int passed = 0, backed = 1;
    EXPECT(tp_partition_audit(p, i, &stage, &check, &passed, &backed, &detail) == TP_OK);
    EXPECT(passed == 1);
  }
  char* text = NULL;
  EXPECT(tp_partition_format(p, &text) == TP_OK);
  EXPECT(strstr(text, "verified: true") != NULL);
  tp_string_free(text);
  tp_partition_free(p);
  tp_tournament_free(t);
}

int main(void) {
  test_tournaments();
  test_connectivity();
  test_paths();
  test_partition();
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
