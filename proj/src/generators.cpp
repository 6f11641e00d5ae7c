#include "tourpart/generators.hpp"

#include <random>
#include <string>
#include <vector>

namespace tourpart {

Tournament random_tournament(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random tournament needs n >= 1");
  std::mt19937_64 rng(seed);
  return Tournament::build(n, [&](Vertex, Vertex) { return (rng() >> 63) != 0; });
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

Tournament paley_tournament(int q) {
  if (!is_prime(q) || q % 4 != 3)
    throw InvalidArgument("Paley tournament needs a prime q = 3 mod 4, got " + std::to_string(q));
  std::vector<char> square(q, 0);
  for (long long x = 1; x < q; ++x) square[(x * x) % q] = 1;
  return Tournament::build(q, [&](Vertex i, Vertex j) { return square[(j - i) % q] != 0; });
}

Tournament transitive_tournament(int n) {
  return Tournament::build(n, [](Vertex, Vertex) { return true; });
}

Tournament layered_tournament(int layers, int width, std::uint64_t seed) {
  if (layers < 1 || width < 1) throw InvalidArgument("layered tournament needs positive layers and width");
  std::mt19937_64 rng(seed);
  return Tournament::build(layers * width, [&](Vertex i, Vertex j) {
    const int li = i / width, lj = j / width;
    if (li == lj) return (rng() >> 63) != 0;
    return lj == li + 1;
  });
}

}  // namespace tourpart
