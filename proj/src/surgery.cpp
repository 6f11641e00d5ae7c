#include "tourpart/surgery.hpp"

#include <algorithm>
#include <string>

#include "tourpart/connectivity.hpp"

namespace tourpart {
namespace {

void check_vertex(const Tournament& t, Vertex v) {
  if (v < 0 || v >= t.size()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

// min(kappa(T[w]), cap)
int connectivity_within(const Tournament& t, const VertexSet& w, int cap) {
  if (cap <= 0 || w.count() < 2) return 0;
  if (w.count() == t.size()) return vertex_connectivity(t, cap);
  return vertex_connectivity(subtournament(t, w).tournament, cap);
}

bool host_reaches(const Tournament& t, const VertexSet& w, int need, const SurgeryOptions& opt) {
  if (opt.host_connectivity) return *opt.host_connectivity >= need;
  return connectivity_within(t, w, need) >= need;
}

VertexSet interior_set(int n, const DiPath& p) {
  VertexSet s(n);
  for (Vertex v : p.interior()) s.insert(v);
  return s;
}

}  // namespace

std::optional<DiPath> shortest_path_avoiding(const Tournament& t, Vertex x, Vertex y, const VertexSet& forbidden) {
  check_vertex(t, x);
  check_vertex(t, y);
  if (x == y) throw PreconditionViolation("shortest path needs distinct endpoints");
  if (forbidden.universe() == t.size() && (forbidden.contains(x) || forbidden.contains(y)))
    throw PreconditionViolation("shortest path endpoint is forbidden");
  const int n = t.size();
  VertexSet open = forbidden.universe() == n ? forbidden.complement() : VertexSet::full(n);
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> layer{x}, next;
  open.erase(x);
  // Expanding each layer in increasing id order hands every vertex the
  // lowest-id parent available on the previous layer.
  while (!layer.empty() && parent[y] < 0) {
    next.clear();
    for (Vertex u : layer)
      t.out_neighbors(u).for_each_in(open, [&](Vertex w) {
        open.erase(w);
        parent[w] = u;
        next.push_back(w);
      });
    std::sort(next.begin(), next.end());
    layer.swap(next);
  }
  if (parent[y] < 0) return std::nullopt;
  DiPath p;
  for (Vertex v = y; v != x; v = parent[v]) p.vertices.push_back(v);
  p.vertices.push_back(x);
  std::reverse(p.vertices.begin(), p.vertices.end());
  if (!is_backwards_transitive(t, p)) throw InvariantViolation("shortest path is not backwards-transitive");
  return p;
}

PathRemoval remove_nonseparating_path(const Tournament& t, Vertex x, Vertex y, const VertexSet& z, int k,
                                      const VertexSet& keep, const SurgeryOptions& options) {
  const int n = t.size();
  check_vertex(t, x);
  check_vertex(t, y);
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  if (z.universe() != n || keep.universe() != n) throw InvalidArgument("vertex set with the wrong universe");
  if (x == y || z.contains(x) || z.contains(y)) throw InvalidArgument("x, y and Z must be distinct");
  VertexSet ends = VertexSet::of(n, {x, y});
  if (!keep.is_subset_of(ends)) throw InvalidArgument("kept endpoints must be a subset of {x, y}");

  auto p = shortest_path_avoiding(t, x, y, z);
  if (!p) throw PreconditionViolation("no path from " + std::to_string(x) + " to " + std::to_string(y) + " avoiding Z");

  PathRemoval r;
  r.path = *p;
  r.removed = VertexSet::of(n, p->vertices) - keep;
  const VertexSet left = t.vertices() - r.removed;
  const int need = k + z.count() + 4;
  r.guaranteed = host_reaches(t, t.vertices(), need, options);
  r.remainder = subtournament(t, left);
  r.remainder_connectivity = connectivity_within(t, left, k);
  if (r.guaranteed && r.remainder_connectivity < k)
    throw InvariantViolation("remainder after path deletion is not strongly " + std::to_string(k) + "-connected");
  return r;
}

Subdivision nonseparating_subdivision(const Tournament& t, const SubdivisionSpec& spec, int k,
                                      const SurgeryOptions& options) {
  const int n = t.size();
  const int d = spec.h.size();
  if (k < 0) throw InvalidArgument("k must be nonnegative");
  if (static_cast<int>(spec.phi.size()) != d) throw InvalidArgument("phi must map every vertex of H");
  Subdivision s;
  s.branch = VertexSet(n);
  for (Vertex v : spec.phi) {
    check_vertex(t, v);
    if (s.branch.contains(v)) throw InvalidArgument("phi is not injective");
    s.branch.insert(v);
  }
  s.edges = spec.h.edges();
  const int m = static_cast<int>(s.edges.size());
  s.guaranteed = host_reaches(t, t.vertices(), k + m * (d + 2), options);

  VertexSet alive = t.vertices();
  for (int i = 0; i < m; ++i) {
    const Vertex a = spec.phi[s.edges[i].first];
    const Vertex b = spec.phi[s.edges[i].second];
    // Other branch vertices play the role of Z; used interiors are gone.
    VertexSet forbidden = (s.branch - VertexSet::of(n, {a, b})) | alive.complement();
    auto p = shortest_path_avoiding(t, a, b, forbidden);
    if (!p) throw PreconditionViolation("edge " + std::to_string(s.edges[i].first) + "->" +
                                        std::to_string(s.edges[i].second) + " of H cannot be routed");
    alive -= interior_set(n, *p);
    s.paths.push_back(std::move(*p));
    if (s.guaranteed) {
      const int level = k + (m - i - 1) * (d + 2);
      if (connectivity_within(t, alive, level) < level)
        throw InvariantViolation("intermediate host lost the connectivity the induction promises");
    }
  }
  s.remainder = alive - s.branch;
  s.remainder_connectivity = connectivity_within(t, s.remainder, k);
  if (s.guaranteed && s.remainder_connectivity < k)
    throw InvariantViolation("subdivision remainder is not strongly " + std::to_string(k) + "-connected");
  return s;
}

SpanningLinkage spanning_linkage(const Tournament& t, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                 const SurgeryOptions& options, const HamiltonianOptions& ham) {
  const int n = t.size();
  const int k = static_cast<int>(pairs.size());
  if (k == 0) throw InvalidArgument("spanning linkage needs at least one pair");
  for (int i = 0; i < k; ++i) {
    check_vertex(t, pairs[i].first);
    check_vertex(t, pairs[i].second);
    if (pairs[i].first == pairs[i].second) throw InvalidArgument("pair with equal endpoints");
    for (int j = 0; j < i; ++j)
      if (pairs[i] == pairs[j]) throw InvalidArgument("repeated pair");
  }
  SpanningLinkage res;
  res.paths.resize(k);
  res.guaranteed = host_reaches(t, t.vertices(), k * k + 3 * k, options);

  VertexSet w = t.vertices();
  for (int i = k - 1; i >= 1; --i) {
    VertexSet z(n);
    for (int j = 0; j < i; ++j) {
      z.insert(pairs[j].first);
      z.insert(pairs[j].second);
    }
    const auto [x, y] = pairs[i];
    const VertexSet keep = VertexSet::of(n, {x, y}) & z;
    auto p = shortest_path_avoiding(t, x, y, (z - keep) | w.complement());
    if (!p) {
      res.status = LinkageStatus::no_path;
      res.failed_pair = i;
      return res;
    }
    w -= VertexSet::of(n, p->vertices) - keep;
    res.paths[i] = std::move(*p);
    if (res.guaranteed) {
      const int level = i * i + 3 * i;
      if (connectivity_within(t, w, level) < level)
        throw InvariantViolation("carved host lost the connectivity the induction promises");
    }
  }

  const auto [x, y] = pairs[0];
  const InducedTournament sub = subtournament(t, w);
  Vertex sx = -1, sy = -1;
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
    if (sub.to_parent[i] == x) sx = static_cast<Vertex>(i);
    if (sub.to_parent[i] == y) sy = static_cast<Vertex>(i);
  }
  if (sx < 0 || sy < 0) throw InvariantViolation("first pair's endpoints were carved away");
  const HamiltonianResult h = hamiltonian_path(sub.tournament, sx, sy, ham);
  if (h.verdict != Verdict::yes) {
    res.status = h.verdict == Verdict::no ? LinkageStatus::hamiltonian_absent : LinkageStatus::budget_exhausted;
    res.failed_pair = 0;
    if (res.guaranteed && h.verdict == Verdict::no)
      throw InvariantViolation("strongly 4-connected remainder has no spanning path");
    return res;
  }
  for (Vertex v : h.path.vertices) res.paths[0].vertices.push_back(sub.to_parent[v]);
  return res;
}

std::string to_string(LinkageStatus s) {
  switch (s) {
    case LinkageStatus::ok: return "ok";
    case LinkageStatus::no_path: return "no_path";
    case LinkageStatus::hamiltonian_absent: return "hamiltonian_absent";
    case LinkageStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

}  // namespace tourpart
