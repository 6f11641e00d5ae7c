#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tourpart/core.hpp"

namespace tourpart {

enum class Direction { forward, backward };

// Menger certificate for an ordered pair (source, target).  `separator` is a
// minimum set of vertices other than the endpoints meeting every
// source -> target path that avoids the direct edge; `paths` is a maximum
// family of internally disjoint source -> target paths, including the
// direct edge when `adjacent`.  Always |paths| == |separator| + adjacent.
struct SeparatorCertificate {
  Vertex source = -1;
  Vertex target = -1;
  bool adjacent = false;
  VertexSet separator;
  std::vector<DiPath> paths;
};

bool is_strongly_connected(const Digraph& g);

// |G| > k and no set of fewer than k vertices disconnects an ordered pair.
bool is_strongly_k_connected(const Digraph& g, int k);
inline bool is_strongly_k_connected(const Tournament& t, int k) { return is_strongly_k_connected(t.graph(), k); }

// Largest k with is_strongly_k_connected(g, k), 0 when not strongly
// connected.  With `cap` the search stops early and returns min(kappa, cap).
int vertex_connectivity(const Digraph& g, std::optional<int> cap = std::nullopt);
inline int vertex_connectivity(const Tournament& t, std::optional<int> cap = std::nullopt) {
  return vertex_connectivity(t.graph(), cap);
}

// Number of internally disjoint x -> y paths avoiding the direct edge,
// counted up to `limit`, using only vertices in `allowed` (endpoints are
// always usable).
int local_connectivity(const Digraph& g, Vertex x, Vertex y, int limit, const VertexSet* allowed = nullptr);

SeparatorCertificate min_separator(const Digraph& g, Vertex x, Vertex y);
inline SeparatorCertificate min_separator(const Tournament& t, Vertex x, Vertex y) {
  return min_separator(t.graph(), x, y);
}

struct MengerStats {
  std::uint64_t calls = 0;
  std::uint64_t violations = 0;
};
// Process-wide tally of min_separator invocations and Menger-equality
// failures (a failure also throws InvariantViolation).
MengerStats menger_stats();

// True iff no set F of at most k-1 vertices, F not containing v, destroys
// every path (possibly of length 0) from v to targets∖F inside
// G[restrict]∖F (backward: from targets∖F to v).
bool safe_flow(const Digraph& g, Vertex v, const VertexSet& targets, int k, Direction dir,
               const VertexSet& restrict);

// Same predicate where paths must alternate between `side` and its
// complement, i.e. run inside the bipartite digraph G[side, restrict∖side].
bool safe_flow_bipartite(const Digraph& g, Vertex v, const VertexSet& targets, int k, Direction dir,
                         const VertexSet& restrict, const VertexSet& side);

// All vertices of `restrict` satisfying safe_flow (or safe_flow_bipartite
// when `side` is given).  k == 1 reduces to one multi-source search.
VertexSet safe_vertices(const Digraph& g, const VertexSet& targets, int k, Direction dir,
                        const VertexSet& restrict, const VertexSet* side = nullptr);

// ---------------------------------------------------------------- linkage

enum class Parity { any, even, odd };
enum class Disjointness { internal, full };

struct LinkPair {
  Vertex from = -1;
  Vertex to = -1;
  Parity parity = Parity::any;
  int min_length = 1;
  std::optional<int> max_length;
};

// With `internal` semantics endpoints may repeat across pairs (a repeated
// pair needs distinct paths) and each path meets the endpoint set only in
// its own two ends.  With `full` semantics all endpoints are distinct and
// the paths are vertex-disjoint.  Interiors always avoid `forbidden`.
struct LinkageRequest {
  std::vector<LinkPair> pairs;
  Disjointness semantics = Disjointness::full;
  VertexSet forbidden;
};

struct LinkageResult {
  Verdict verdict = Verdict::unknown;
  std::vector<DiPath> paths;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultLinkageBudget = 5'000'000;

LinkageResult find_disjoint_paths(const Tournament& t, const LinkageRequest& req,
                                  std::uint64_t node_budget = kDefaultLinkageBudget);

// Exhaustive over all ordered choices of 2k distinct endpoints; meant for
// small tournaments.
Verdict is_k_linked(const Tournament& t, int k, std::uint64_t node_budget = kDefaultLinkageBudget);

// Sufficient condition from the literature: strongly 452k-connected
// tournaments are k-linked.
bool meets_linkage_connectivity_bound(const Tournament& t, int k);

}  // namespace tourpart
