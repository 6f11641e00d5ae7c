#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tourpart/connectivity.hpp"
#include "tourpart/generators.hpp"
#include "tourpart/surgery.hpp"

using namespace tourpart;

namespace {

Tournament c3() { return Tournament::build(3, [](Vertex i, Vertex j) { return !(i == 0 && j == 2); }); }

// Plain BFS distances from x, skipping forbidden vertices; -1 if unreached.
std::vector<int> distances(const Tournament& t, Vertex x, const VertexSet& forbidden) {
  std::vector<int> dist(t.size(), -1);
  std::vector<Vertex> q{x};
  dist[x] = 0;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (Vertex w = 0; w < t.size(); ++w)
      if (dist[w] < 0 && !forbidden.contains(w) && t.has_edge(q[h], w)) {
        dist[w] = dist[q[h]] + 1;
        q.push_back(w);
      }
  return dist;
}

Vertex pick(std::mt19937_64& rng, int n, const VertexSet& avoid) {
  Vertex v;
  do v = static_cast<Vertex>(rng() % n);
  while (avoid.contains(v));
  return v;
}

}  // namespace

TEST_CASE("shortest_path_avoiding small cases") {
  auto p = shortest_path_avoiding(c3(), 0, 2, VertexSet(3));
  REQUIRE(p);
  CHECK(p->vertices == std::vector<Vertex>{0, 1, 2});
  auto q = shortest_path_avoiding(transitive_tournament(4), 0, 3, VertexSet(4));
  REQUIRE(q);
  CHECK(q->length() == 1);
  CHECK_FALSE(shortest_path_avoiding(c3(), 0, 2, VertexSet::of(3, {1})));
  CHECK_THROWS_AS(shortest_path_avoiding(c3(), 0, 0, VertexSet(3)), PreconditionViolation);
  CHECK_THROWS_AS(shortest_path_avoiding(c3(), 0, 2, VertexSet::of(3, {2})), PreconditionViolation);
}

TEST_CASE("shortest paths are BFS-shortest with lowest-id parents") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 30;
    const Tournament t = random_tournament(n, rng());
    VertexSet forbidden(n);
    for (int i = 0; i < 6; ++i) forbidden.insert(static_cast<Vertex>(rng() % n));
    const Vertex x = pick(rng, n, forbidden);
    VertexSet avoid = forbidden;
    avoid.insert(x);
    const Vertex y = pick(rng, n, avoid);
    const auto dist = distances(t, x, forbidden);
    auto p = shortest_path_avoiding(t, x, y, forbidden);
    REQUIRE(p.has_value() == (dist[y] >= 0));
    if (!p) continue;
    CHECK(is_valid_path(t, *p));
    CHECK(p->length() == dist[y]);
    CHECK(is_backwards_transitive(t, *p));
    for (std::size_t i = 1; i < p->vertices.size(); ++i) {
      const Vertex w = p->vertices[i];
      Vertex lowest = -1;
      for (Vertex u = 0; u < n && lowest < 0; ++u)
        if (dist[u] == dist[w] - 1 && !forbidden.contains(u) && t.has_edge(u, w)) lowest = u;
      CHECK(p->vertices[i - 1] == lowest);
    }
  }
}

TEST_CASE("remove_nonseparating_path keeps the remainder connected") {
  std::mt19937_64 rng(23);
  const int k = 2, d = 2, n = 60;
  int trials = 0;
  while (trials < 100) {
    const Tournament t = random_tournament(n, rng());
    if (vertex_connectivity(t, k + d + 4) < k + d + 4) continue;
    ++trials;
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Vertex x = perm[0], y = perm[1];
    const VertexSet z = VertexSet::of(n, {perm[2], perm[3]});
    VertexSet keep(n);
    if (rng() % 2) keep.insert(x);
    if (rng() % 2) keep.insert(y);
    const PathRemoval r = remove_nonseparating_path(t, x, y, z, k, keep);
    CHECK(r.guaranteed);
    CHECK(is_backwards_transitive(t, r.path));
    CHECK_FALSE(r.removed.intersects(z));
    CHECK(r.remainder.tournament.size() == n - r.removed.count());
    CHECK(is_strongly_k_connected(r.remainder.tournament, k));
    CHECK(r.remainder_connectivity == k);
  }
}

TEST_CASE("remove_nonseparating_path edge cases") {
  const Tournament p = paley_tournament(7);
  // Paths of length at most two lose at most one vertex when both ends stay.
  for (Vertex y = 1; y < 7; ++y) {
    const PathRemoval r = remove_nonseparating_path(p, 0, y, VertexSet(7), 1, VertexSet::of(7, {0, y}));
    CHECK(r.path.length() <= 2);
    CHECK(r.removed.count() <= 1);
    CHECK_FALSE(r.guaranteed);
  }
  // Best-effort mode reports instead of asserting.
  const Tournament tr = transitive_tournament(6);
  const PathRemoval b = remove_nonseparating_path(tr, 0, 5, VertexSet(6), 1, VertexSet(6));
  CHECK_FALSE(b.guaranteed);
  CHECK(b.remainder_connectivity == 0);
  CHECK_THROWS_AS(remove_nonseparating_path(tr, 5, 0, VertexSet(6), 1, VertexSet(6)), PreconditionViolation);
  CHECK_THROWS_AS(remove_nonseparating_path(tr, 0, 5, VertexSet::of(6, {0}), 1, VertexSet(6)), InvalidArgument);
  CHECK_THROWS_AS(remove_nonseparating_path(tr, 0, 5, VertexSet(6), 1, VertexSet::of(6, {3})), InvalidArgument);
}

TEST_CASE("nonseparating_subdivision") {
  SUBCASE("single edge") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const Tournament t = random_tournament(60, rng());
      SubdivisionSpec spec{Digraph(2), {4, 9}};
      spec.h.add_edge(0, 1);
      const Subdivision s = nonseparating_subdivision(t, spec, 2);
      REQUIRE(s.paths.size() == 1u);
      CHECK(s.paths[0].front() == 4);
      CHECK(s.paths[0].back() == 9);
      CHECK(is_backwards_transitive(t, s.paths[0]));
      CHECK(s.remainder_connectivity == 2);
      CHECK(is_strongly_k_connected(subtournament(t, s.remainder).tournament, 2));
      // One edge is exactly one path-deletion step.
      const PathRemoval r = remove_nonseparating_path(t, 4, 9, VertexSet(60), 2, VertexSet(60));
      CHECK(r.path == s.paths[0]);
      CHECK(r.removed == t.vertices() - s.remainder);
    }
  }
  SUBCASE("directed triangle") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 80;
      const Tournament t = random_tournament(n, rng());
      SubdivisionSpec spec{Digraph(3), {5, 17, 40}};
      spec.h.add_edge(0, 1);
      spec.h.add_edge(1, 2);
      spec.h.add_edge(2, 0);
      const Subdivision s = nonseparating_subdivision(t, spec, 1);
      REQUIRE(s.paths.size() == 3u);
      CHECK(s.branch == VertexSet::of(n, {5, 17, 40}));
      VertexSet seen(n), covered = s.branch;
      for (std::size_t i = 0; i < 3; ++i) {
        const DiPath& p = s.paths[i];
        CHECK(is_valid_path(t, p));
        CHECK(is_backwards_transitive(t, p));
        CHECK(p.front() == spec.phi[s.edges[i].first]);
        CHECK(p.back() == spec.phi[s.edges[i].second]);
        for (Vertex v : p.interior()) {
          CHECK_FALSE(seen.contains(v));
          CHECK_FALSE(s.branch.contains(v));
          seen.insert(v);
          covered.insert(v);
        }
      }
      CHECK(s.remainder == t.vertices() - covered);
      CHECK(is_strongly_connected(subtournament(t, s.remainder).tournament.graph()));
    }
  }
  SUBCASE("errors") {
    SubdivisionSpec bad{Digraph(2), {1, 1}};
    CHECK_THROWS_AS(nonseparating_subdivision(c3(), bad, 1), InvalidArgument);
    SubdivisionSpec blocked{Digraph(2), {3, 0}};
    blocked.h.add_edge(0, 1);
    CHECK_THROWS_AS(nonseparating_subdivision(transitive_tournament(4), blocked, 1), PreconditionViolation);
  }
}

TEST_CASE("spanning_linkage") {
  const auto one = spanning_linkage(transitive_tournament(4), {{0, 3}});
  REQUIRE(one.status == LinkageStatus::ok);
  CHECK(one.paths[0].vertices == std::vector<Vertex>{0, 1, 2, 3});

  std::mt19937_64 rng(41);
  int found = 0, trials = 0;
  while (trials < 50) {
    const Tournament t = random_tournament(20, rng());
    if (vertex_connectivity(t, 4) < 4) continue;
    ++trials;
    const Vertex x = static_cast<Vertex>(rng() % 20);
    Vertex y;
    do y = static_cast<Vertex>(rng() % 20);
    while (y == x);
    const auto r = spanning_linkage(t, {{x, y}});
    const bool exists = oracle::hamiltonian_dp(t, x, y);
    CHECK(exists);
    if (r.status == LinkageStatus::ok) {
      ++found;
      CHECK(r.paths[0].vertices.size() == 20u);
      CHECK(is_valid_path(t, r.paths[0]));
    }
  }
  CHECK(found == 50);

  trials = 0;
  while (trials < 10) {
    const int n = 40;
    const Tournament t = random_tournament(n, rng());
    if (vertex_connectivity(t, 10) < 10) continue;
    ++trials;
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::vector<std::pair<Vertex, Vertex>> pairs{{perm[0], perm[1]}, {perm[2], perm[3]}};
    const auto r = spanning_linkage(t, pairs);
    CHECK(r.guaranteed);
    REQUIRE(r.status == LinkageStatus::ok);
    std::vector<int> hits(n, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      CHECK(is_valid_path(t, r.paths[i]));
      CHECK(r.paths[i].front() == pairs[i].first);
      CHECK(r.paths[i].back() == pairs[i].second);
      for (Vertex v : r.paths[i].vertices) ++hits[v];
    }
    for (int h : hits) CHECK(h == 1);
  }

  // Shared endpoints: the later pair keeps them.
  const Tournament p = paley_tournament(31);
  const auto shared = spanning_linkage(p, {{0, 1}, {1, 2}});
  REQUIRE(shared.status == LinkageStatus::ok);
  std::vector<int> hits(31, 0);
  for (const auto& path : shared.paths)
    for (Vertex v : path.vertices) ++hits[v];
  for (Vertex v = 0; v < 31; ++v) CHECK(hits[v] == (v == 1 ? 2 : 1));

  CHECK(spanning_linkage(transitive_tournament(5), {{4, 0}}).status == LinkageStatus::hamiltonian_absent);
  CHECK(spanning_linkage(transitive_tournament(5), {{0, 4}, {3, 1}}).status == LinkageStatus::no_path);
  CHECK_THROWS_AS(spanning_linkage(c3(), {{0, 1}, {0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(spanning_linkage(c3(), {}), InvalidArgument);
}
