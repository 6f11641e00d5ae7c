#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tourpart/errors.hpp"
#include "tourpart/vertex_set.hpp"

namespace tourpart {

// Three-valued outcome of a search that is exact only within a budget.
// `unknown` means the budget ran out; it never counts as success.
enum class Verdict { no, yes, unknown };

// General digraph on dense ids: no loops, no parallel edges.  Rows are
// kept as bitsets in both directions.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n);

  int size() const noexcept { return n_; }
  void add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const noexcept { return out_[u].contains(v); }
  const VertexSet& out_neighbors(Vertex u) const noexcept { return out_[u]; }
  const VertexSet& in_neighbors(Vertex u) const noexcept { return in_[u]; }
  int out_degree(Vertex u) const noexcept { return out_[u].count(); }
  int in_degree(Vertex u) const noexcept { return in_[u].count(); }
  std::size_t edge_count() const noexcept;
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  int n_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
};

// Complete oriented graph.  Immutable once built.
class Tournament {
 public:
  Tournament() = default;

  // `forward(i, j)` for i < j decides whether the pair is oriented i -> j.
  template <class Orientation>
  static Tournament build(int n, Orientation&& forward) {
    if (n < 1) throw InvalidArgument("tournament needs at least one vertex");
    Digraph g(n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) {
        if (forward(i, j))
          g.add_edge(i, j);
        else
          g.add_edge(j, i);
      }
    return Tournament(std::move(g));
  }

  // Validates that `g` orients every pair exactly once.
  static Tournament from_digraph(Digraph g);

  int size() const noexcept { return graph_.size(); }
  bool has_edge(Vertex u, Vertex v) const noexcept { return graph_.has_edge(u, v); }
  const VertexSet& out_neighbors(Vertex u) const noexcept { return graph_.out_neighbors(u); }
  const VertexSet& in_neighbors(Vertex u) const noexcept { return graph_.in_neighbors(u); }
  int out_degree(Vertex u) const noexcept { return graph_.out_degree(u); }
  int in_degree(Vertex u) const noexcept { return graph_.in_degree(u); }
  const Digraph& graph() const noexcept { return graph_; }
  VertexSet vertices() const { return VertexSet::full(size()); }

  // min over vertices of min(in-degree, out-degree)
  int min_semidegree() const;

 private:
  explicit Tournament(Digraph g) : graph_(std::move(g)) {}
  Digraph graph_;
};

// A directed simple path, stored as its vertex sequence.
struct DiPath {
  std::vector<Vertex> vertices;

  int length() const noexcept {
    return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1;
  }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  // Vertices strictly between the endpoints.
  std::span<const Vertex> interior() const {
    if (vertices.size() < 2) return {};
    return std::span<const Vertex>(vertices).subspan(1, vertices.size() - 2);
  }
  friend bool operator==(const DiPath&, const DiPath&) = default;
};

bool is_valid_path(const Digraph& g, const DiPath& p);
inline bool is_valid_path(const Tournament& t, const DiPath& p) { return is_valid_path(t.graph(), p); }

// Induced substructures remember where their vertices came from.
struct InducedTournament {
  Tournament tournament;
  std::vector<Vertex> to_parent;
};

struct InducedDigraph {
  Digraph graph;
  std::vector<Vertex> to_parent;
};

Tournament reverse(const Tournament& t);
Digraph reverse(const Digraph& g);

InducedTournament subtournament(const Tournament& t, const VertexSet& s);
InducedDigraph induced_subdigraph(const Digraph& g, const VertexSet& s);

// T[A,B]: all edges of T with one end in A and the other in B, relabelled
// onto A ∪ B in increasing id order.
InducedDigraph bipartite_subdigraph(const Tournament& t, const VertexSet& a, const VertexSet& b);

bool is_backwards_transitive(const Tournament& t, const DiPath& p);

// Source-to-sink order of T[S] if it is transitive.
std::optional<std::vector<Vertex>> transitive_order(const Tournament& t, const VertexSet& s);

struct HamiltonianOptions {
  int exact_threshold = 20;
  std::uint64_t node_budget = 4'000'000;
  std::uint64_t seed = 1;
  int insertion_restarts = 32;
};

struct HamiltonianResult {
  Verdict verdict = Verdict::unknown;
  DiPath path;
  bool exact = false;  // decided by the subset dynamic programme
};

// Hamiltonian x -> y path.  Exact below `exact_threshold` vertices; above it
// a randomized insertion heuristic followed by budgeted backtracking.
HamiltonianResult hamiltonian_path(const Tournament& t, Vertex x, Vertex y,
                                   const HamiltonianOptions& options = {});

}  // namespace tourpart
