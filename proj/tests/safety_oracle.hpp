#pragma once

#include "oracles.hpp"
#include <random>

#include "tourpart/generators.hpp"
#include "tourpart/partition.hpp"

namespace oracle {

using tourpart::Coloring;
using tourpart::Tournament;
using tourpart::Vertex;
using tourpart::VertexSet;

// Safety straight from the definition: for every F of at most k-1 vertices
// avoiding v, a walk from v (or into v) that is monochromatic in v's
// colour, or alternating between colours, reaches a target outside F.
inline bool literal_safe(const Tournament& t, const Coloring& col, Vertex v, const VertexSet& blocked, int k,
                         bool backward, bool alternating) {
  const int n = t.size();
  bool ok = true;
  oracle::for_each_subset_upto(n, k - 1, 1U << v, [&](std::uint32_t f) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> st{v};
    seen[v] = 1;
    bool hit = false;
    while (!st.empty() && !hit) {
      const Vertex u = st.back();
      st.pop_back();
      if (!blocked.contains(u)) hit = true;
      for (Vertex w = 0; w < n; ++w) {
        if (seen[w] || (f >> w & 1U) || !col.is_colored(w)) continue;
        if (!(backward ? t.has_edge(w, u) : t.has_edge(u, w))) continue;
        if (alternating ? col[w] == col[u] : col[w] != col[v]) continue;
        seen[w] = 1;
        st.push_back(w);
      }
    }
    ok = hit;
    return ok;
  });
  return ok;
}

// Random tournament, random D, E_A, E_B and a random partial colouring.
struct SafetyInstance {
  Tournament t;
  Coloring col;
  tourpart::SafetyContext ctx;
};

inline SafetyInstance random_safety_instance(std::mt19937_64& rng, int n, int k) {
  SafetyInstance s{tourpart::random_tournament(n, rng()), Coloring(n), {}};
  s.ctx.d = VertexSet(n);
  s.ctx.e_a = VertexSet(n);
  s.ctx.e_b = VertexSet(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto r = rng() % 10;
    if (r < 4) s.ctx.d.insert(v);
    if (rng() % 4 == 0) s.ctx.e_a.insert(v);
    if (rng() % 4 == 0) s.ctx.e_b.insert(v);
    if (rng() % 5 != 0) s.col.set(v, rng() % 2 ? tourpart::Color::alpha : tourpart::Color::beta);
  }
  s.ctx.k = k;
  return s;
}

}  // namespace oracle
