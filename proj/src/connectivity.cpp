#include "tourpart/connectivity.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "flow.hpp"

namespace tourpart {
namespace {

std::atomic<std::uint64_t> g_separator_calls{0};
std::atomic<std::uint64_t> g_separator_violations{0};

VertexSet reach(const Digraph& g, const VertexSet& from, const VertexSet& allowed, bool backward,
                const VertexSet* side) {
  VertexSet seen = from;
  std::vector<Vertex> stack = from.to_vector();
  VertexSet other;
  if (side) other = side->complement();
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    const VertexSet& row = backward ? g.in_neighbors(u) : g.out_neighbors(u);
    VertexSet mask = allowed;
    if (side) mask &= side->contains(u) ? other : *side;
    row.for_each_in(mask, [&](Vertex w) {
      if (!seen.contains(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
    });
  }
  return seen;
}

// Even's root argument: a separator of size < k misses one of the first k
// vertices, and that vertex is cut off from, or cannot reach, some vertex.
bool roots_certify(const Digraph& g, int k) {
  const int n = g.size();
  detail::UnitVertexFlow fwd(g, false);
  for (Vertex r = 0; r < k; ++r)
    for (Vertex w = 0; w < n; ++w) {
      if (w == r) continue;
      if (!g.has_edge(r, w) && fwd.run_to_vertex(r, w, k, true) < k) return false;
      if (!g.has_edge(w, r) && fwd.run_to_vertex(w, r, k, true) < k) return false;
    }
  return true;
}

}  // namespace

bool is_strongly_connected(const Digraph& g) {
  const int n = g.size();
  if (n == 0) return false;
  const VertexSet all = VertexSet::full(n);
  const VertexSet start = VertexSet::of(n, {0});
  return reach(g, start, all, false, nullptr) == all && reach(g, start, all, true, nullptr) == all;
}

bool is_strongly_k_connected(const Digraph& g, int k) {
  if (k < 1) throw InvalidArgument("connectivity level must be at least 1");
  const int n = g.size();
  if (n <= k) return false;
  if (k == 1) return is_strongly_connected(g);
  for (Vertex v = 0; v < n; ++v)
    if (g.out_degree(v) < k || g.in_degree(v) < k) return false;
  return roots_certify(g, k);
}

int vertex_connectivity(const Digraph& g, std::optional<int> cap) {
  const int n = g.size();
  if (n <= 1) return 0;
  int best = n - 1;
  if (cap) best = std::min(best, std::max(*cap, 0));
  for (Vertex v = 0; v < n; ++v) best = std::min({best, g.out_degree(v), g.in_degree(v)});
  if (best == 0) return 0;
  if (!is_strongly_connected(g)) return 0;
  if (best == 1) return 1;
  detail::UnitVertexFlow fwd(g, false);
  // Roots 0..best suffice: a minimum separator has at most `best` vertices.
  for (Vertex r = 0; r <= best && r < n; ++r)
    for (Vertex w = 0; w < n && best > 0; ++w) {
      if (w == r) continue;
      if (!g.has_edge(r, w)) best = std::min(best, fwd.run_to_vertex(r, w, best, true));
      if (!g.has_edge(w, r)) best = std::min(best, fwd.run_to_vertex(w, r, best, true));
    }
  return best;
}

int local_connectivity(const Digraph& g, Vertex x, Vertex y, int limit, const VertexSet* allowed) {
  const int n = g.size();
  if (x < 0 || y < 0 || x >= n || y >= n || x == y) throw InvalidArgument("local_connectivity: bad endpoints");
  detail::UnitVertexFlow f(g, false, allowed);
  return f.run_to_vertex(x, y, limit, true);
}

SeparatorCertificate min_separator(const Digraph& g, Vertex x, Vertex y) {
  const int n = g.size();
  if (x < 0 || y < 0 || x >= n || y >= n) throw InvalidArgument("min_separator: endpoint out of range");
  if (x == y) throw InvalidArgument("min_separator: endpoints must differ");
  ++g_separator_calls;
  detail::UnitVertexFlow f(g, false);
  const int flow = f.run_to_vertex(x, y, n, true);
  SeparatorCertificate cert;
  cert.source = x;
  cert.target = y;
  cert.adjacent = g.has_edge(x, y);
  cert.separator = f.min_cut();
  if (cert.adjacent) cert.paths.push_back(DiPath{{x, y}});
  for (auto& p : f.paths()) cert.paths.push_back(DiPath{std::move(p)});

  // Menger equality, plus the certificate actually certifying: the cut
  // separates once the direct arc is ignored, and the paths are valid and
  // internally disjoint.
  bool ok = flow == cert.separator.count() &&
            static_cast<int>(cert.paths.size()) == cert.separator.count() + (cert.adjacent ? 1 : 0);
  VertexSet interiors(n);
  for (const auto& p : cert.paths) {
    if (!is_valid_path(g, p) || p.front() != x || p.back() != y) ok = false;
    for (Vertex v : p.interior()) {
      if (interiors.contains(v)) ok = false;
      interiors.insert(v);
    }
  }
  VertexSet allowed = VertexSet::full(n) - cert.separator;
  allowed.erase(y);
  VertexSet seen = reach(g, VertexSet::of(n, {x}), allowed, false, nullptr);
  bool hits_y = false;
  seen.for_each([&](Vertex u) {
    if (u != x && g.has_edge(u, y)) hits_y = true;
  });
  if (hits_y) ok = false;
  if (!ok) {
    ++g_separator_violations;
    throw InvariantViolation("Menger certificate mismatch for pair " + std::to_string(x) + " -> " +
                             std::to_string(y));
  }
  return cert;
}

MengerStats menger_stats() { return {g_separator_calls.load(), g_separator_violations.load()}; }

namespace {

bool safe_impl(const Digraph& g, Vertex v, const VertexSet& targets, int k, Direction dir,
               const VertexSet& restrict, const VertexSet* side) {
  if (v < 0 || v >= g.size()) throw InvalidArgument("safe_flow: vertex out of range");
  if (k < 1) throw InvalidArgument("safe_flow: k must be at least 1");
  if (targets.contains(v)) return true;
  if (!restrict.contains(v)) throw InvalidArgument("safe_flow: vertex outside the restricting set");
  const VertexSet goal = targets & restrict;
  if (goal.empty()) return false;
  detail::UnitVertexFlow f(g, dir == Direction::backward, &restrict, side);
  return f.run_to_set(v, goal, k) >= k;
}

}  // namespace

bool safe_flow(const Digraph& g, Vertex v, const VertexSet& targets, int k, Direction dir,
               const VertexSet& restrict) {
  return safe_impl(g, v, targets, k, dir, restrict, nullptr);
}

bool safe_flow_bipartite(const Digraph& g, Vertex v, const VertexSet& targets, int k, Direction dir,
                         const VertexSet& restrict, const VertexSet& side) {
  return safe_impl(g, v, targets, k, dir, restrict, &side);
}

VertexSet safe_vertices(const Digraph& g, const VertexSet& targets, int k, Direction dir,
                        const VertexSet& restrict, const VertexSet* side) {
  const VertexSet goal = targets & restrict;
  if (k == 1) {
    // Who reaches the goal: search against the direction of travel.
    return reach(g, goal, restrict, dir == Direction::forward, side);
  }
  VertexSet out(g.size());
  if (goal.empty()) return out;
  detail::UnitVertexFlow f(g, dir == Direction::backward, &restrict, side);
  restrict.for_each([&](Vertex v) {
    if (goal.contains(v) || f.run_to_set(v, goal, k) >= k) out.insert(v);
  });
  return out;
}

}  // namespace tourpart
