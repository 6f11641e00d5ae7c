#pragma once

#include <cstdint>

#include "tourpart/core.hpp"

namespace tourpart {

// Orientation bits come from std::mt19937_64 (top bit of each draw), one
// draw per pair in lexicographic (i, j), i < j, order.  The engine is fully
// specified by the standard, so outputs agree across platforms.
Tournament random_tournament(int n, std::uint64_t seed);

// Vertices Z_q, i -> j iff j - i is a nonzero square mod q.  Needs q prime
// and q = 3 (mod 4).
Tournament paley_tournament(int q);

// i -> j iff i < j.
Tournament transitive_tournament(int n);

// `layers` blocks of `width` vertices, each block a random tournament.
// Block i sends every edge to block i+1 and receives every edge from the
// blocks i+2, i+3, ...  Crossing from the first block to the last needs
// at least layers-1 steps, which forces long connector paths.
Tournament layered_tournament(int layers, int width, std::uint64_t seed);

bool is_prime(int q);

}  // namespace tourpart
