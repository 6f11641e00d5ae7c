#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tourpart/core.hpp"

namespace tourpart {

// Greedy in-dominating set of T[within]: repeatedly take the vertex of
// least out-degree inside the common out-neighbourhood of the vertices
// taken so far.  Every vertex of within∖S sends an edge into S.
VertexSet greedy_in_dominating_set(const Tournament& t, const VertexSet& within);
inline VertexSet greedy_in_dominating_set(const Tournament& t) { return greedy_in_dominating_set(t, t.vertices()); }

// Mirror image: every vertex of within∖S receives an edge from S.
VertexSet greedy_out_dominating_set(const Tournament& t, const VertexSet& within);
inline VertexSet greedy_out_dominating_set(const Tournament& t) { return greedy_out_dominating_set(t, t.vertices()); }

enum class DomMode { out, in };

// Out mode: `chain` lists A from source to sink, chain.front() == extremal
// (a), chain.back() == anchor (v); A∖{a} out-dominates the rest of the
// host outside A ∪ exceptions.  In mode: chain.front() == anchor (v, the
// source), chain.back() == extremal (b, the sink); B∖{b} in-dominates.
struct DominatingStructure {
  DomMode mode = DomMode::out;
  Vertex anchor = -1;
  std::vector<Vertex> chain;
  Vertex extremal = -1;
  VertexSet exceptions;
  int c = 2;
  int degree = 0;          // d⁻(v) (out mode) or d⁺(v) (in mode) inside the host
  std::vector<int> trace;  // |E_1|, |E_2|, ... as the construction ran

  VertexSet members(int universe) const { return VertexSet::of(universe, chain); }
};

// Built inside T[within]; `v` must lie in `within`.  Requires c >= 2 and
// d⁻(v) >= 2^(c-1) in T[within]; throws PreconditionViolation otherwise.
DominatingStructure out_dominating_structure(const Tournament& t, Vertex v, int c, const VertexSet& within);
inline DominatingStructure out_dominating_structure(const Tournament& t, Vertex v, int c) {
  return out_dominating_structure(t, v, c, t.vertices());
}
DominatingStructure in_dominating_structure(const Tournament& t, Vertex v, int c, const VertexSet& within);
inline DominatingStructure in_dominating_structure(const Tournament& t, Vertex v, int c) {
  return in_dominating_structure(t, v, c, t.vertices());
}

// Full invariant scan of a structure against its host T[within]; returns a
// description of the first violated property.
std::optional<std::string> audit_structure(const Tournament& t, const VertexSet& within,
                                           const DominatingStructure& s);

struct CoreSet {
  VertexSet z;
  int k = 0;
  bool degenerate = false;  // host too small for the reduction; z is the whole host
};

// Union of k successively extracted in-dominating sets and k successively
// extracted out-dominating sets of T[within].  Every vertex of within∖Z has
// at least k out-neighbours and k in-neighbours in Z.
CoreSet core_set(const Tournament& t, int k, const VertexSet& within);
inline CoreSet core_set(const Tournament& t, int k) { return core_set(t, k, t.vertices()); }

}  // namespace tourpart
