#pragma once

#include <algorithm>
#include <numeric>
#include <random>

#include "tourpart/generators.hpp"
#include "tourpart/partition.hpp"

namespace instances {

using namespace tourpart;

// Same tournament with ids permuted at random.
inline Tournament shuffled(const Tournament& t, std::uint64_t seed) {
  std::vector<Vertex> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return Tournament::build(t.size(), [&](Vertex i, Vertex j) { return t.has_edge(perm[i], perm[j]); });
}

// Layered tournaments force every connector to be long.  Block order
// would otherwise line up with ids and bias the lowest-id choices.
inline Tournament long_connectors(int layers, int width, std::uint64_t seed) {
  return shuffled(layered_tournament(layers, width, seed), seed);
}

// Relaxed parameters under which the layered family runs the bundle
// stages end to end.
inline PipelineParams bundle_params(int n) {
  PipelineParams p = PipelineParams::relaxed(1, n);
  p.c = 7;
  p.bundle_size = 12;
  return p;
}

}  // namespace instances
