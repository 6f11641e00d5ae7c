#include "tourpart/tourpart.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "tourpart/connectivity.hpp"
#include "tourpart/generators.hpp"
#include "tourpart/io.hpp"
#include "tourpart/partition.hpp"
#include "tourpart/surgery.hpp"

using namespace tourpart;

struct tp_tournament {
  Tournament t;
};
struct tp_digraph {
  Digraph g;
};
struct tp_params {
  PipelineParams p;
  std::string fingerprint;
};
struct tp_paths {
  std::vector<std::vector<int>> paths;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> remainder;
  bool guaranteed = false;
  int remainder_connectivity = -1;
  std::string status = "ok";
};
struct tp_partition {
  PartitionResult r;
  std::string mode;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0, last_column = 0;

tp_status fail(tp_status s, const std::string& msg) {
  last_error = msg;
  last_line = last_column = 0;
  return s;
}

template <class F>
tp_status guard(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    fail(TP_PARSE_ERROR, e.what());
    last_line = e.line();
    last_column = e.column();
    return TP_PARSE_ERROR;
  } catch (const InvalidArgument& e) {
    return fail(TP_INVALID_ARGUMENT, e.what());
  } catch (const IoError& e) {
    return fail(TP_IO_ERROR, e.what());
  } catch (const PreconditionViolation& e) {
    return fail(TP_PRECONDITION, e.what());
  } catch (const StageError& e) {
    return fail(TP_STAGE_ERROR, e.what());
  } catch (const InvariantViolation& e) {
    return fail(TP_INVARIANT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TP_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TP_INTERNAL, e.what());
  } catch (...) {
    return fail(TP_INTERNAL, "unknown exception");
  }
}

#define TP_REQUIRE(cond, msg) \
  if (!(cond)) return fail(TP_INVALID_ARGUMENT, msg)

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tp_status emit(Tournament t, tp_tournament** out) {
  *out = new tp_tournament{std::move(t)};
  return TP_OK;
}

std::string format(const Tournament& t, tp_format f) {
  switch (f) {
    case TP_FORMAT_EDGE_LIST: return write_edge_list(t);
    case TP_FORMAT_COMPACT: return write_compact(t);
    case TP_FORMAT_DOT: return to_dot(t.graph());
  }
  throw InvalidArgument("unknown format");
}

void check_vertex(const Tournament& t, int v) {
  if (v < 0 || v >= t.size()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

tp_status verdict_status(Verdict v) {
  return v == Verdict::yes ? TP_OK : v == Verdict::no ? TP_NOT_FOUND : TP_BUDGET;
}

tp_status emit(PipelineParams p, tp_params** out) {
  p.validate();
  std::string fp = p.fingerprint();
  *out = new tp_params{std::move(p), std::move(fp)};
  return TP_OK;
}

tp_status emit(PartitionResult r, tp_partition** out) {
  const bool ok = r.verified;
  std::string mode = to_string(r.mode);
  *out = new tp_partition{std::move(r), std::move(mode)};
  if (!ok) return fail(TP_NOT_FOUND, (*out)->r.diagnostic.empty() ? "partition not verified" : (*out)->r.diagnostic);
  return TP_OK;
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "1.0.0"; }

const char* tp_status_name(tp_status s) {
  switch (s) {
    case TP_OK: return "ok";
    case TP_NOT_FOUND: return "not found";
    case TP_BUDGET: return "budget exhausted";
    case TP_INVALID_ARGUMENT: return "invalid argument";
    case TP_PARSE_ERROR: return "parse error";
    case TP_IO_ERROR: return "I/O error";
    case TP_PRECONDITION: return "precondition violated";
    case TP_STAGE_ERROR: return "stage error";
    case TP_INVARIANT: return "invariant violated";
    case TP_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tp_last_error(void) { return last_error.c_str(); }

void tp_last_error_position(int* line, int* column) {
  if (line) *line = last_line;
  if (column) *column = last_column;
}

void tp_string_free(char* s) { std::free(s); }

tp_status tp_tournament_random(int n, uint64_t seed, tp_tournament** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  return guard([&] { return emit(random_tournament(n, seed), out); });
}

tp_status tp_tournament_paley(int q, tp_tournament** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  return guard([&] { return emit(paley_tournament(q), out); });
}

tp_status tp_tournament_transitive(int n, tp_tournament** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  return guard([&] { return emit(transitive_tournament(n), out); });
}

tp_status tp_tournament_layered(int layers, int width, uint64_t seed, tp_tournament** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  return guard([&] { return emit(layered_tournament(layers, width, seed), out); });
}

tp_status tp_tournament_parse(const char* text, size_t length, tp_tournament** out) {
  TP_REQUIRE(out && (text || length == 0), "null argument");
  *out = nullptr;
  return guard([&] { return emit(parse_tournament(std::string_view(text ? text : "", length)), out); });
}

tp_status tp_tournament_load(const char* path, tp_tournament** out) {
  TP_REQUIRE(out && path, "null argument");
  *out = nullptr;
  return guard([&] { return emit(parse_tournament(read_file(path)), out); });
}

tp_status tp_tournament_format(const tp_tournament* t, tp_format f, char** out) {
  TP_REQUIRE(t && out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(format(t->t, f));
    return TP_OK;
  });
}

tp_status tp_tournament_save(const tp_tournament* t, tp_format f, const char* path) {
  TP_REQUIRE(t && path, "null argument");
  return guard([&] {
    write_file(path, format(t->t, f));
    return TP_OK;
  });
}

void tp_tournament_free(tp_tournament* t) { delete t; }

int tp_tournament_size(const tp_tournament* t) { return t ? t->t.size() : 0; }

int tp_tournament_has_edge(const tp_tournament* t, int u, int v) {
  if (!t || u < 0 || v < 0 || u >= t->t.size() || v >= t->t.size()) return 0;
  return t->t.has_edge(u, v) ? 1 : 0;
}

tp_status tp_tournament_degrees(const tp_tournament* t, int v, int* in_degree, int* out_degree) {
  TP_REQUIRE(t, "null tournament");
  TP_REQUIRE(v >= 0 && v < t->t.size(), "vertex out of range");
  if (in_degree) *in_degree = t->t.in_degree(v);
  if (out_degree) *out_degree = t->t.out_degree(v);
  return TP_OK;
}

tp_status tp_digraph_parse(const char* text, size_t length, tp_digraph** out) {
  TP_REQUIRE(out && (text || length == 0), "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tp_digraph{parse_digraph(std::string_view(text ? text : "", length))};
    return TP_OK;
  });
}

tp_status tp_digraph_load(const char* path, tp_digraph** out) {
  TP_REQUIRE(out && path, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new tp_digraph{parse_digraph(read_file(path))};
    return TP_OK;
  });
}

int tp_digraph_size(const tp_digraph* g) { return g ? g->g.size() : 0; }

void tp_digraph_free(tp_digraph* g) { delete g; }

tp_status tp_vertex_connectivity(const tp_tournament* t, int cap, int* out) {
  TP_REQUIRE(t && out, "null argument");
  return guard([&] {
    *out = cap < 0 ? vertex_connectivity(t->t) : vertex_connectivity(t->t, cap);
    return TP_OK;
  });
}

tp_status tp_is_strongly_k_connected(const tp_tournament* t, int k, int* out) {
  TP_REQUIRE(t && out, "null argument");
  TP_REQUIRE(k >= 0, "k must be nonnegative");
  return guard([&] {
    *out = is_strongly_k_connected(t->t, k) ? 1 : 0;
    return TP_OK;
  });
}

tp_status tp_is_k_linked(const tp_tournament* t, int k, uint64_t node_budget, tp_verdict* out) {
  TP_REQUIRE(t && out, "null argument");
  return guard([&] {
    const Verdict v = is_k_linked(t->t, k, node_budget);
    *out = v == Verdict::yes ? TP_VERDICT_YES : v == Verdict::no ? TP_VERDICT_NO : TP_VERDICT_UNKNOWN;
    return TP_OK;
  });
}

tp_status tp_carve(const tp_tournament* t, int x, int y, const int* avoid, size_t avoid_count, int k, int keep_x,
                   int keep_y, tp_paths** out) {
  TP_REQUIRE(t && out && (avoid || avoid_count == 0), "null argument");
  *out = nullptr;
  return guard([&] {
    const int n = t->t.size();
    check_vertex(t->t, x);
    check_vertex(t->t, y);
    VertexSet z(n), keep(n);
    for (size_t i = 0; i < avoid_count; ++i) {
      check_vertex(t->t, avoid[i]);
      z.insert(avoid[i]);
    }
    if (keep_x) keep.insert(x);
    if (keep_y) keep.insert(y);
    PathRemoval r;
    try {
      r = remove_nonseparating_path(t->t, x, y, z, k, keep);
    } catch (const PreconditionViolation& e) {
      return fail(TP_NOT_FOUND, e.what());
    }
    auto* p = new tp_paths;
    p->paths.push_back(r.path.vertices);
    p->edges.push_back({-1, -1});
    p->remainder = r.remainder.to_parent;
    p->guaranteed = r.guaranteed;
    p->remainder_connectivity = r.remainder_connectivity;
    *out = p;
    return TP_OK;
  });
}

tp_status tp_link(const tp_tournament* t, const int* pairs, size_t count, int spanning, uint64_t node_budget,
                  tp_paths** out) {
  TP_REQUIRE(t && out && (pairs || count == 0), "null argument");
  *out = nullptr;
  return guard([&] {
    std::vector<std::pair<Vertex, Vertex>> ps;
    for (size_t i = 0; i < count; ++i) {
      check_vertex(t->t, pairs[2 * i]);
      check_vertex(t->t, pairs[2 * i + 1]);
      ps.push_back({pairs[2 * i], pairs[2 * i + 1]});
    }
    auto* p = new tp_paths;
    tp_status s = TP_OK;
    if (spanning) {
      HamiltonianOptions ham;
      ham.node_budget = node_budget;
      SpanningLinkage r;
      try {
        r = spanning_linkage(t->t, ps, {}, ham);
      } catch (...) {
        delete p;
        throw;
      }
      for (const auto& q : r.paths) p->paths.push_back(q.vertices);
      p->guaranteed = r.guaranteed;
      p->status = to_string(r.status);
      s = r.status == LinkageStatus::ok ? TP_OK : r.status == LinkageStatus::budget_exhausted ? TP_BUDGET : TP_NOT_FOUND;
    } else {
      LinkageRequest req;
      for (auto [a, b] : ps) {
        LinkPair lp;
        lp.from = a;
        lp.to = b;
        req.pairs.push_back(lp);
      }
      req.forbidden = VertexSet(t->t.size());
      LinkageResult r;
      try {
        r = find_disjoint_paths(t->t, req, node_budget);
      } catch (...) {
        delete p;
        throw;
      }
      for (const auto& q : r.paths) p->paths.push_back(q.vertices);
      s = verdict_status(r.verdict);
      p->status = s == TP_OK ? "ok" : s == TP_NOT_FOUND ? "proven infeasible" : "budget exhausted";
    }
    p->edges.assign(p->paths.size(), {-1, -1});
    if (s != TP_OK) {
      fail(s, p->status);
      if (!spanning) {
        delete p;
        return s;
      }
    }
    *out = p;
    return s;
  });
}

tp_status tp_subdivide(const tp_tournament* t, const tp_digraph* h, const int* phi, size_t phi_count, int k,
                       tp_paths** out) {
  TP_REQUIRE(t && h && out && (phi || phi_count == 0), "null argument");
  *out = nullptr;
  return guard([&] {
    SubdivisionSpec spec{h->g, {}};
    for (size_t i = 0; i < phi_count; ++i) {
      check_vertex(t->t, phi[i]);
      spec.phi.push_back(phi[i]);
    }
    Subdivision r;
    try {
      r = nonseparating_subdivision(t->t, spec, k);
    } catch (const PreconditionViolation& e) {
      return fail(TP_NOT_FOUND, e.what());
    }
    auto* p = new tp_paths;
    for (const auto& q : r.paths) p->paths.push_back(q.vertices);
    p->edges.assign(r.edges.begin(), r.edges.end());
    p->remainder = r.remainder.to_vector();
    p->guaranteed = r.guaranteed;
    p->remainder_connectivity = r.remainder_connectivity;
    *out = p;
    return TP_OK;
  });
}

size_t tp_paths_count(const tp_paths* p) { return p ? p->paths.size() : 0; }

size_t tp_paths_length(const tp_paths* p, size_t i) { return p && i < p->paths.size() ? p->paths[i].size() : 0; }

const int* tp_paths_vertices(const tp_paths* p, size_t i) {
  return p && i < p->paths.size() ? p->paths[i].data() : nullptr;
}

void tp_paths_edge(const tp_paths* p, size_t i, int* from, int* to) {
  const bool ok = p && i < p->edges.size();
  if (from) *from = ok ? p->edges[i].first : -1;
  if (to) *to = ok ? p->edges[i].second : -1;
}

int tp_paths_guaranteed(const tp_paths* p) { return p && p->guaranteed ? 1 : 0; }

int tp_paths_remainder_connectivity(const tp_paths* p) { return p ? p->remainder_connectivity : -1; }

size_t tp_paths_remainder_size(const tp_paths* p) { return p ? p->remainder.size() : 0; }

const int* tp_paths_remainder(const tp_paths* p) { return p ? p->remainder.data() : nullptr; }

const char* tp_paths_status(const tp_paths* p) { return p ? p->status.c_str() : ""; }

void tp_paths_free(tp_paths* p) { delete p; }


tp_status tp_params_paper(int k, tp_params** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  TP_REQUIRE(k >= 1, "k must be at least 1");
  return guard([&] { return emit(PipelineParams::paper(k), out); });
}

tp_status tp_params_relaxed(int k, int n, tp_params** out) {
  TP_REQUIRE(out, "null output");
  *out = nullptr;
  TP_REQUIRE(k >= 1 && n >= 1, "k and n must be positive");
  return guard([&] { return emit(PipelineParams::relaxed(k, n), out); });
}

tp_status tp_params_parse(const char* text, size_t length, const tp_params* base, tp_params** out) {
  TP_REQUIRE(base && out && (text || length == 0), "null argument");
  *out = nullptr;
  return guard([&] { return emit(parse_params(std::string_view(text ? text : "", length), base->p), out); });
}

tp_status tp_params_load(const char* path, const tp_params* base, tp_params** out) {
  TP_REQUIRE(base && out && path, "null argument");
  *out = nullptr;
  return guard([&] { return emit(parse_params(read_file(path), base->p), out); });
}

tp_status tp_params_format(const tp_params* p, char** out) {
  TP_REQUIRE(p && out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(p->p.to_text());
    return TP_OK;
  });
}

const char* tp_params_fingerprint(const tp_params* p) { return p ? p->fingerprint.c_str() : ""; }

int tp_params_theorem_backed(const tp_params* p) { return p && p->p.theorem_backed() ? 1 : 0; }

void tp_params_free(tp_params* p) { delete p; }

tp_search_options tp_search_options_default(void) {
  const SearchOptions d;
  return {d.seed, d.restarts, d.steps_per_restart, d.threads};
}


tp_status tp_partition_run(const tp_tournament* t, int k, tp_mode mode, const tp_params* params,
                           const tp_search_options* options, tp_partition** out) {
  TP_REQUIRE(t && out, "null argument");
  *out = nullptr;
  TP_REQUIRE(k >= 1, "k must be at least 1");
  TP_REQUIRE(mode == TP_MODE_PIPELINE || mode == TP_MODE_SEARCH || mode == TP_MODE_AUTO, "unknown mode");
  return guard([&] {
    const PipelineParams p = params ? params->p : PipelineParams::relaxed(k, t->t.size());
    SearchOptions so;
    if (options) so = {options->seed, options->restarts, options->steps_per_restart, options->threads};
    const PartitionMode m = mode == TP_MODE_PIPELINE ? PartitionMode::pipeline
                            : mode == TP_MODE_SEARCH ? PartitionMode::search
                                                     : PartitionMode::automatic;
    return emit(partition(t->t, k, m, p, so), out);
  });
}

tp_status tp_partition_verify(const tp_tournament* t, const int* side, size_t n, int k, tp_partition** out) {
  TP_REQUIRE(t && side && out, "null argument");
  *out = nullptr;
  TP_REQUIRE(n == static_cast<size_t>(t->t.size()), "side array must cover every vertex");
  return guard([&] {
    VertexSet v1(t->t.size()), v2(t->t.size());
    for (size_t v = 0; v < n; ++v) {
      if (side[v] == 1)
        v1.insert(static_cast<Vertex>(v));
      else if (side[v] == 2)
        v2.insert(static_cast<Vertex>(v));
      else
        throw InvalidArgument("side values must be 1 or 2");
    }
    return emit(verify_partition(t->t, v1, v2, k), out);
  });
}

int tp_partition_verified(const tp_partition* p) { return p && p->r.verified ? 1 : 0; }

int tp_partition_side(const tp_partition* p, int v) {
  if (!p || v < 0 || v >= p->r.v1.universe()) return 0;
  return p->r.v1.contains(v) ? 1 : 2;
}

void tp_partition_connectivity(const tp_partition* p, int out[3], int* exact) {
  for (int i = 0; i < 3; ++i) out[i] = p ? p->r.connectivity[i] : 0;
  if (exact) *exact = p && p->r.connectivity_exact ? 1 : 0;
}

const char* tp_partition_mode(const tp_partition* p) { return p ? p->mode.c_str() : ""; }

const char* tp_partition_diagnostic(const tp_partition* p) { return p ? p->r.diagnostic.c_str() : ""; }

const char* tp_partition_params_fingerprint(const tp_partition* p) {
  return p ? p->r.params_fingerprint.c_str() : "";
}

tp_status tp_partition_format(const tp_partition* p, char** out) {
  TP_REQUIRE(p && out, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = dup(format_partition(p->r));
    return TP_OK;
  });
}

size_t tp_partition_audit_count(const tp_partition* p) { return p ? p->r.audits.size() : 0; }

tp_status tp_partition_audit(const tp_partition* p, size_t i, const char** stage, const char** check, int* passed,
                             int* theorem_backed, const char** detail) {
  TP_REQUIRE(p && i < p->r.audits.size(), "audit index out of range");
  const StageAudit& a = p->r.audits[i];
  if (stage) *stage = a.stage.c_str();
  if (check) *check = a.check.c_str();
  if (passed) *passed = a.passed ? 1 : 0;
  if (theorem_backed) *theorem_backed = a.theorem_backed ? 1 : 0;
  if (detail) *detail = a.detail.c_str();
  return TP_OK;
}

void tp_partition_free(tp_partition* p) { delete p; }

}  // extern "C"
