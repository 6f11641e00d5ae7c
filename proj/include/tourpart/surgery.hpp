#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tourpart/core.hpp"

namespace tourpart {

// BFS-shortest x -> y path in T - forbidden; among shortest paths the one
// whose BFS parents have the lowest ids.  Throws PreconditionViolation if
// x == y or an endpoint is forbidden.
std::optional<DiPath> shortest_path_avoiding(const Tournament& t, Vertex x, Vertex y, const VertexSet& forbidden);

struct SurgeryOptions {
  // Lower bound on the connectivity of the host, if the caller knows one;
  // otherwise it is measured (capped at what the guarantee needs).
  std::optional<int> host_connectivity;
};

struct PathRemoval {
  DiPath path;
  VertexSet removed;           // V(P) minus the kept endpoints
  InducedTournament remainder; // T - removed
  bool guaranteed = false;     // host connectivity >= k + d + 4 was established
  int remainder_connectivity = 0;  // min(kappa(remainder), k)
};

// Shortest x -> y path avoiding Z and the tournament left after deleting
// V(P) minus the endpoints listed in `keep` (a subset of {x, y}).  When the
// host is strongly (k + |Z| + 4)-connected the remainder is asserted to be
// strongly k-connected; otherwise the measured value is only reported.
// Throws PreconditionViolation if no such path exists.
PathRemoval remove_nonseparating_path(const Tournament& t, Vertex x, Vertex y, const VertexSet& z, int k,
                                      const VertexSet& keep, const SurgeryOptions& options = {});

struct SubdivisionSpec {
  Digraph h;
  std::vector<Vertex> phi;  // phi[i] is the branch vertex of H-vertex i
};

struct Subdivision {
  std::vector<std::pair<Vertex, Vertex>> edges;  // edges of H in processing order
  std::vector<DiPath> paths;                     // paths[i] realises edges[i]
  VertexSet branch;
  VertexSet remainder;          // V(T) minus V(H*)
  bool guaranteed = false;      // kappa(T) >= k + m(d + 2) was established
  int remainder_connectivity = 0;  // min(kappa(T[remainder]), k)
};

// Realises every edge of H by a backwards-transitive path between the
// prescribed branch vertices, one path-deletion step per edge.  Throws
// PreconditionViolation if some edge cannot be routed.
Subdivision nonseparating_subdivision(const Tournament& t, const SubdivisionSpec& spec, int k,
                                      const SurgeryOptions& options = {});

enum class LinkageStatus { ok, no_path, hamiltonian_absent, budget_exhausted };

struct SpanningLinkage {
  LinkageStatus status = LinkageStatus::ok;
  std::vector<DiPath> paths;  // paths[i] joins pairs[i]
  bool guaranteed = false;    // kappa(T) >= k^2 + 3k was established
  int failed_pair = -1;       // index of the pair that could not be routed
};

// Paths P_i from x_i to y_i whose vertex sets cover V(T), carved from the
// last pair to the first; the first pair is closed by a Hamiltonian path
// of what is left.
SpanningLinkage spanning_linkage(const Tournament& t, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                 const SurgeryOptions& options = {}, const HamiltonianOptions& ham = {});

std::string to_string(LinkageStatus s);

}  // namespace tourpart
