#include "tourpart/core.hpp"

#include <algorithm>
#include <string>

namespace tourpart {

Digraph::Digraph(int n) : n_(n), out_(n, VertexSet(n)), in_(n, VertexSet(n)) {
  if (n < 0) throw InvalidArgument("negative vertex count");
}

void Digraph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvalidArgument("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
  if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
  out_[u].insert(v);
  in_[v].insert(u);
}

std::size_t Digraph::edge_count() const noexcept {
  std::size_t m = 0;
  for (const auto& row : out_) m += static_cast<std::size_t>(row.count());
  return m;
}

std::vector<std::pair<Vertex, Vertex>> Digraph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) out_[u].for_each([&](Vertex v) { out.emplace_back(u, v); });
  return out;
}

Tournament Tournament::from_digraph(Digraph g) {
  const int n = g.size();
  if (n < 1) throw InvalidArgument("tournament needs at least one vertex");
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const bool a = g.has_edge(u, v);
      const bool b = g.has_edge(v, u);
      if (a == b)
        throw InvalidArgument("pair {" + std::to_string(u) + "," + std::to_string(v) + "} is " +
                              (a ? "oriented both ways" : "missing"));
    }
  return Tournament(std::move(g));
}

int Tournament::min_semidegree() const {
  int best = size();
  for (Vertex v = 0; v < size(); ++v) best = std::min({best, in_degree(v), out_degree(v)});
  return best;
}

bool is_valid_path(const Digraph& g, const DiPath& p) {
  if (p.vertices.empty()) return false;
  VertexSet seen(g.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const Vertex v = p.vertices[i];
    if (v < 0 || v >= g.size() || seen.contains(v)) return false;
    seen.insert(v);
    if (i > 0 && !g.has_edge(p.vertices[i - 1], v)) return false;
  }
  return true;
}

Tournament reverse(const Tournament& t) {
  return Tournament::build(t.size(), [&](Vertex i, Vertex j) { return t.has_edge(j, i); });
}

Digraph reverse(const Digraph& g) {
  Digraph r(g.size());
  for (auto [u, v] : g.edges()) r.add_edge(v, u);
  return r;
}

InducedTournament subtournament(const Tournament& t, const VertexSet& s) {
  std::vector<Vertex> map = s.to_vector();
  if (map.empty()) throw InvalidArgument("subtournament of an empty vertex set");
  Tournament sub = Tournament::build(static_cast<int>(map.size()),
                                     [&](Vertex i, Vertex j) { return t.has_edge(map[i], map[j]); });
  return {std::move(sub), std::move(map)};
}

InducedDigraph induced_subdigraph(const Digraph& g, const VertexSet& s) {
  std::vector<Vertex> map = s.to_vector();
  std::vector<Vertex> local(g.size(), -1);
  for (std::size_t i = 0; i < map.size(); ++i) local[map[i]] = static_cast<Vertex>(i);
  Digraph sub(static_cast<int>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i)
    g.out_neighbors(map[i]).for_each_in(s, [&](Vertex v) { sub.add_edge(static_cast<Vertex>(i), local[v]); });
  return {std::move(sub), std::move(map)};
}

InducedDigraph bipartite_subdigraph(const Tournament& t, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("bipartite extract needs two nonempty sides");
  if (a.intersects(b)) throw InvalidArgument("bipartite sides overlap");
  const VertexSet both = a | b;
  std::vector<Vertex> map = both.to_vector();
  std::vector<Vertex> local(t.size(), -1);
  for (std::size_t i = 0; i < map.size(); ++i) local[map[i]] = static_cast<Vertex>(i);
  Digraph g(static_cast<int>(map.size()));
  a.for_each([&](Vertex u) {
    t.out_neighbors(u).for_each_in(b, [&](Vertex v) { g.add_edge(local[u], local[v]); });
  });
  b.for_each([&](Vertex u) {
    t.out_neighbors(u).for_each_in(a, [&](Vertex v) { g.add_edge(local[u], local[v]); });
  });
  return {std::move(g), std::move(map)};
}

bool is_backwards_transitive(const Tournament& t, const DiPath& p) {
  if (!is_valid_path(t, p)) throw InvalidArgument("not a directed path of the tournament");
  const auto& v = p.vertices;
  for (std::size_t i = 2; i < v.size(); ++i)
    for (std::size_t j = 0; j + 2 <= i; ++j)
      if (!t.has_edge(v[i], v[j])) return false;
  return true;
}

std::optional<std::vector<Vertex>> transitive_order(const Tournament& t, const VertexSet& s) {
  const int m = s.count();
  if (m == 0) throw InvalidArgument("transitive_order of an empty set");
  std::vector<Vertex> by_rank(m, -1);
  bool ok = true;
  s.for_each([&](Vertex v) {
    const int d = t.out_neighbors(v).count_common(s);
    const int pos = m - 1 - d;
    if (by_rank[pos] != -1)
      ok = false;
    else
      by_rank[pos] = v;
  });
  if (!ok) return std::nullopt;
  return by_rank;
}

}  // namespace tourpart
