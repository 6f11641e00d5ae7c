#include <cmath>
#include <random>

#include "doctest.h"
#include "tourpart/domination.hpp"
#include "tourpart/generators.hpp"

using namespace tourpart;

namespace {

int ceil_log2(int n) {
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

// Direct check: every vertex of within∖s has an out-neighbour (in = true)
// or an in-neighbour (in = false) in s.
bool dominates(const Tournament& t, const VertexSet& s, const VertexSet& within, bool in) {
  for (Vertex u = 0; u < t.size(); ++u) {
    if (!within.contains(u) || s.contains(u)) continue;
    bool hit = false;
    for (Vertex x = 0; x < t.size() && !hit; ++x)
      if (s.contains(x)) hit = in ? t.has_edge(u, x) : t.has_edge(x, u);
    if (!hit) return false;
  }
  return true;
}

VertexSet random_subset(int n, std::mt19937_64& rng, int keep_in_8) {
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v)
    if (static_cast<int>(rng() % 8) < keep_in_8) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("greedy dominating sets are small and dominate") {
  for (int n = 2; n <= 300; n += (n < 20 ? 1 : 37))
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Tournament t = random_tournament(n, seed * 7 + n);
      const VertexSet in = greedy_in_dominating_set(t);
      const VertexSet out = greedy_out_dominating_set(t);
      CHECK(dominates(t, in, t.vertices(), true));
      CHECK(dominates(t, out, t.vertices(), false));
      CHECK(in.count() <= ceil_log2(n));
      CHECK(out.count() <= ceil_log2(n));
    }
  // A single vertex has nothing to dominate it but itself.
  const Tournament one = transitive_tournament(1);
  CHECK(greedy_in_dominating_set(one).count() == 1);
  // The sink of a transitive tournament in-dominates everything.
  CHECK(greedy_in_dominating_set(transitive_tournament(9)) == VertexSet::of(9, {8}));
  CHECK(greedy_out_dominating_set(transitive_tournament(9)) == VertexSet::of(9, {0}));
}

TEST_CASE("greedy dominating sets inside a subset") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 30 + static_cast<int>(rng() % 40);
    const Tournament t = random_tournament(n, rng());
    const VertexSet within = random_subset(n, rng, 5);
    if (within.empty()) continue;
    const VertexSet s = greedy_in_dominating_set(t, within);
    CHECK(s.is_subset_of(within));
    CHECK(dominates(t, s, within, true));
    CHECK(s.count() <= std::max(1, ceil_log2(within.count())));
  }
}

TEST_CASE("dominating structure on random tournaments") {
  std::mt19937_64 rng(11);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 120);
    const Tournament t = random_tournament(n, rng());
    const VertexSet within = trial % 2 ? t.vertices() : random_subset(n, rng, 6);
    if (within.empty()) continue;
    const Vertex v = within.to_vector()[rng() % within.count()];
    const int c = 2 + static_cast<int>(rng() % 6);
    const int din = t.in_neighbors(v).count_common(within);
    const int dout = t.out_neighbors(v).count_common(within);
    if (din >= (1 << (c - 1))) {
      const auto s = out_dominating_structure(t, v, c, within);
      const auto err = audit_structure(t, within, s);
      CHECK_MESSAGE(!err, *err);
      CHECK(s.chain.back() == v);
      // Independent restatement of the three properties.
      const VertexSet a = s.members(n);
      VertexSet core = a;
      core.erase(s.extremal);
      CHECK(dominates(t, core, within - s.exceptions - VertexSet::of(n, {s.extremal}), false));
      CHECK(s.exceptions.count() * std::pow(2.0, c - 2) <= din);
      CHECK(static_cast<int>(s.chain.size()) <= c);
      ++built;
    } else {
      CHECK_THROWS_AS(out_dominating_structure(t, v, c, within), PreconditionViolation);
    }
    if (dout >= (1 << (c - 1))) {
      const auto s = in_dominating_structure(t, v, c, within);
      const auto err = audit_structure(t, within, s);
      CHECK_MESSAGE(!err, *err);
      CHECK(s.chain.front() == v);
      ++built;
    }
  }
  CHECK(built > 300);
}

TEST_CASE("in mode is out mode on the reversed tournament") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Tournament t = random_tournament(60, seed);
    const Tournament r = reverse(t);
    for (Vertex v = 0; v < 60; v += 7) {
      if (t.out_degree(v) < 8) continue;
      const auto a = in_dominating_structure(t, v, 4);
      const auto b = out_dominating_structure(r, v, 4);
      std::vector<Vertex> rev(b.chain.rbegin(), b.chain.rend());
      CHECK(a.chain == rev);
      CHECK(a.exceptions == b.exceptions);
      CHECK(a.trace == b.trace);
    }
  }
}

TEST_CASE("dominating structure edge cases") {
  const Tournament tr = transitive_tournament(10);
  // Vertex 9 is the sink: every other vertex is an in-neighbour.
  const auto s = out_dominating_structure(tr, 9, 3);
  CHECK_FALSE(audit_structure(tr, tr.vertices(), s));
  CHECK_THROWS_AS(out_dominating_structure(tr, 0, 2), PreconditionViolation);
  CHECK_THROWS_AS(out_dominating_structure(tr, 9, 1), InvalidArgument);
  CHECK_THROWS_AS(out_dominating_structure(tr, 9, 3, VertexSet::of(10, {1, 2})), InvalidArgument);

  const Tournament p = paley_tournament(31);
  for (Vertex v = 0; v < 31; ++v) {
    const auto o = out_dominating_structure(p, v, 4);
    CHECK_FALSE(audit_structure(p, p.vertices(), o));
    const auto i = in_dominating_structure(p, v, 4);
    CHECK_FALSE(audit_structure(p, p.vertices(), i));
  }

  // The audit notices a tampered structure.
  auto bad = out_dominating_structure(p, 0, 4);
  bad.exceptions.clear();
  const auto err = audit_structure(p, p.vertices(), bad);
  if (err) CHECK(err->find("dominated") != std::string::npos);
  bad = out_dominating_structure(p, 0, 4);
  std::swap(bad.chain.front(), bad.chain.back());
  CHECK(audit_structure(p, p.vertices(), bad));
}

TEST_CASE("core_set") {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const int n = 256;
      const Tournament t = random_tournament(n, seed + 100 * k);
      const CoreSet z = core_set(t, k);
      REQUIRE_FALSE(z.degenerate);
      CHECK(z.z.count() <= 3.0 * k * std::log2(n));
      for (Vertex u = 0; u < n; ++u) {
        if (z.z.contains(u)) continue;
        CHECK(t.out_neighbors(u).count_common(z.z) >= k);
        CHECK(t.in_neighbors(u).count_common(z.z) >= k);
      }
    }
  const Tournament small = random_tournament(20, 1);
  const CoreSet d = core_set(small, 3);
  CHECK(d.degenerate);
  CHECK(d.z == small.vertices());
  CHECK_THROWS_AS(core_set(transitive_tournament(3), 1), InvalidArgument);
  CHECK_THROWS_AS(core_set(small, 0), InvalidArgument);

  const Tournament t = random_tournament(200, 3);
  VertexSet within(200);
  for (Vertex v = 0; v < 200; v += 2) within.insert(v);
  const CoreSet h = core_set(t, 1, within);
  CHECK(h.z.is_subset_of(within));
  within.for_each([&](Vertex u) {
    if (h.z.contains(u)) return;
    CHECK(t.out_neighbors(u).count_common(h.z) >= 1);
    CHECK(t.in_neighbors(u).count_common(h.z) >= 1);
  });
}
