#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>

#include "tourpart/connectivity.hpp"
#include "tourpart/partition.hpp"

namespace tourpart {

PartitionResult verify_partition(const Tournament& t, const VertexSet& v1, const VertexSet& v2, int k, int exact_limit) {
  const int n = t.size();
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (v1.universe() != n || v2.universe() != n) throw InvalidArgument("vertex set with the wrong universe");
  if (v1.empty() || v2.empty() || v1.intersects(v2) || (v1 | v2) != t.vertices())
    throw InvalidArgument("not a partition into two nonempty sets");
  PartitionResult r;
  r.v1 = v1;
  r.v2 = v2;
  const Digraph g1 = subtournament(t, v1).tournament.graph();
  const Digraph g2 = subtournament(t, v2).tournament.graph();
  const Digraph g3 = bipartite_subdigraph(t, v1, v2).graph;
  r.connectivity_exact = n <= exact_limit;
  const Digraph* gs[3] = {&g1, &g2, &g3};
  bool all = true;
  for (int i = 0; i < 3; ++i) {
    const bool ok = is_strongly_k_connected(*gs[i], k);
    all = all && ok;
    if (r.connectivity_exact) {
      r.connectivity[i] = vertex_connectivity(*gs[i]);
      if (ok != (r.connectivity[i] >= k))
        throw InvariantViolation("connectivity value disagrees with the k-connectivity test");
    } else {
      r.connectivity[i] = ok ? k : vertex_connectivity(*gs[i], k);
    }
  }
  r.verified = all;
  return r;
}

namespace {

struct Score {
  int primary = -1;    // sum of min(kappa, k) over the three graphs
  int secondary = -1;  // sum of min(semidegree, 2k)
  auto operator<=>(const Score&) const = default;
};

int semidegree(const Digraph& g) {
  int d = g.size();
  for (Vertex v = 0; v < g.size(); ++v) d = std::min({d, g.in_degree(v), g.out_degree(v)});
  return d;
}

Score evaluate(const Tournament& t, const VertexSet& v1, int k) {
  const VertexSet v2 = t.vertices() - v1;
  Score s{0, 0};
  if (v1.count() <= k || v2.count() <= k) return s;
  const Digraph g1 = subtournament(t, v1).tournament.graph();
  const Digraph g2 = subtournament(t, v2).tournament.graph();
  const Digraph g3 = bipartite_subdigraph(t, v1, v2).graph;
  for (const Digraph* g : {&g1, &g2, &g3}) {
    s.primary += vertex_connectivity(*g, k);
    s.secondary += std::min(semidegree(*g), 2 * k);
  }
  return s;
}

struct Attempt {
  VertexSet v1;
  Score score;
};

// One restart: random balanced split, then greedy single-vertex moves with
// a random kick whenever no move improves.
Attempt restart(const Tournament& t, int k, std::uint64_t seed, int index, int steps) {
  const int n = t.size();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet v1(n);
  for (int i = 0; i < n / 2; ++i) v1.insert(order[i]);
  Attempt best{v1, evaluate(t, v1, k)};
  Score cur = best.score;
  Vertex last = -1;
  const int full = 3 * k;
  for (int step = 0; step < steps && cur.primary < full; ++step) {
    std::shuffle(order.begin(), order.end(), rng);
    Score top;
    Vertex move = -1;
    const int c1 = v1.count();
    for (Vertex v : order) {
      if (v == last) continue;
      const bool in1 = v1.contains(v);
      if ((in1 ? c1 - 1 : n - c1 - 1) <= k) continue;
      in1 ? v1.erase(v) : v1.insert(v);
      const Score sc = evaluate(t, v1, k);
      in1 ? v1.insert(v) : v1.erase(v);
      if (sc > top) {
        top = sc;
        move = v;
      }
    }
    if (move < 0) break;
    if (!(top > cur)) move = order[rng() % n];
    v1.contains(move) ? v1.erase(move) : v1.insert(move);
    last = move;
    cur = evaluate(t, v1, k);
    if (cur > best.score) best = {v1, cur};
  }
  return best;
}

}  // namespace

PartitionResult search_partition(const Tournament& t, int k, const SearchOptions& options) {
  const int n = t.size();
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (n < 2 * k + 2) throw InvalidArgument("search needs at least 2k+2 vertices");
  if (options.restarts < 1 || options.threads < 1) throw InvalidArgument("restarts and threads must be positive");
  const int steps = options.steps_per_restart > 0 ? options.steps_per_restart : 4 * n;

  std::vector<Attempt> results(options.restarts);
  std::vector<char> done(options.restarts, 0);
  std::atomic<int> next{0};
  std::atomic<int> first_success{options.restarts};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < options.restarts;) {
      // A success at a lower index already decides the outcome.
      if (i > first_success.load()) continue;
      results[i] = restart(t, k, options.seed, i, steps);
      done[i] = 1;
      if (results[i].score.primary == 3 * k) {
        int cur = first_success.load();
        while (i < cur && !first_success.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const int threads = std::min(options.threads, options.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Lowest restart index wins, so the outcome does not depend on threads.
  int pick = -1;
  for (int i = 0; i < options.restarts; ++i) {
    if (!done[i]) continue;
    if (results[i].score.primary == 3 * k) {
      pick = i;
      break;
    }
  }
  if (pick < 0) {
    for (int i = 0; i < options.restarts; ++i)
      if (done[i] && (pick < 0 || results[pick].score < results[i].score)) pick = i;
  }
  const VertexSet v1 = results[pick].v1;
  PartitionResult r = verify_partition(t, v1, t.vertices() - v1, k);
  r.mode = PartitionMode::search;
  if (results[pick].score.primary == 3 * k && !r.verified)
    throw InvariantViolation("search score and verifier disagree");
  if (!r.verified)
    r.diagnostic = "none found after " + std::to_string(options.restarts) + " restarts of " + std::to_string(steps) +
                   " steps";
  return r;
}

PartitionResult partition(const Tournament& t, int k, PartitionMode mode, const PipelineParams& params,
                          const SearchOptions& options) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (mode != PartitionMode::search && params.k != k)
    throw InvalidArgument("pipeline parameters were built for k = " + std::to_string(params.k));
  switch (mode) {
    case PartitionMode::pipeline: return run_pipeline(t, params);
    case PartitionMode::search: return search_partition(t, k, options);
    case PartitionMode::automatic: break;
  }
  std::string why;
  const Feasibility f = pipeline_feasibility(t, params);
  if (!f.ok) {
    why = f.reason;
  } else {
    try {
      PartitionResult r = run_pipeline(t, params);
      if (r.verified) return r;
      why = r.diagnostic;
    } catch (const StageError& e) {
      why = e.what();
    }
  }
  PartitionResult r = search_partition(t, k, options);
  r.params_fingerprint = params.fingerprint();
  r.diagnostic = "pipeline: " + why + "; fell back to search" + (r.diagnostic.empty() ? "" : "; " + r.diagnostic);
  return r;
}

}  // namespace tourpart
