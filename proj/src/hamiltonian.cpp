#include <algorithm>
#include <numeric>
#include <random>

#include "tourpart/core.hpp"

namespace tourpart {
namespace {

// Vertices reachable from `start` using only vertices in `allowed`
// (start itself need not be allowed).
VertexSet reach_within(const Digraph& g, Vertex start, const VertexSet& allowed, bool backward) {
  VertexSet seen(g.size());
  seen.insert(start);
  std::vector<Vertex> stack{start};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    const VertexSet& row = backward ? g.in_neighbors(u) : g.out_neighbors(u);
    row.for_each_in(allowed, [&](Vertex w) {
      if (!seen.contains(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
    });
  }
  return seen;
}

HamiltonianResult exact_dp(const Tournament& t, Vertex x, Vertex y) {
  const int n = t.size();
  std::vector<Vertex> mid;
  for (Vertex v = 0; v < n; ++v)
    if (v != x && v != y) mid.push_back(v);
  const int m = static_cast<int>(mid.size());
  HamiltonianResult res;
  res.exact = true;
  if (m == 0) {
    res.verdict = t.has_edge(x, y) ? Verdict::yes : Verdict::no;
    if (res.verdict == Verdict::yes) res.path.vertices = {x, y};
    return res;
  }
  std::vector<std::uint32_t> out_mask(m, 0);
  std::uint32_t from_x = 0, to_y = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (t.has_edge(mid[i], mid[j])) out_mask[i] |= 1U << j;
    if (t.has_edge(x, mid[i])) from_x |= 1U << i;
    if (t.has_edge(mid[i], y)) to_y |= 1U << i;
  }
  const std::uint32_t full = (m == 32) ? ~0U : ((1U << m) - 1);
  // ends[S]: indices i such that some path x -> ... -> mid[i] covers exactly S.
  std::vector<std::uint32_t> ends(static_cast<std::size_t>(full) + 1, 0);
  for (int i = 0; i < m; ++i)
    if (from_x & (1U << i)) ends[1U << i] = 1U << i;
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t e = ends[s];
    while (e) {
      const int i = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t next = out_mask[i] & ~s;
      while (next) {
        const int j = std::countr_zero(next);
        next &= next - 1;
        ends[s | (1U << j)] |= 1U << j;
      }
    }
    if (s == full) break;
  }
  const std::uint32_t last = ends[full] & to_y;
  if (!last) {
    res.verdict = Verdict::no;
    return res;
  }
  std::vector<Vertex> rev{y};
  std::uint32_t s = full;
  int cur = std::countr_zero(last);
  while (true) {
    rev.push_back(mid[cur]);
    const std::uint32_t prev_set = s & ~(1U << cur);
    if (prev_set == 0) break;
    std::uint32_t cand = ends[prev_set];
    int pick = -1;
    while (cand) {
      const int i = std::countr_zero(cand);
      cand &= cand - 1;
      if (out_mask[i] & (1U << cur)) {
        pick = i;
        break;
      }
    }
    s = prev_set;
    cur = pick;
  }
  rev.push_back(x);
  std::reverse(rev.begin(), rev.end());
  res.verdict = Verdict::yes;
  res.path.vertices = std::move(rev);
  return res;
}

std::vector<Vertex> shortest_path(const Tournament& t, Vertex x, Vertex y) {
  const int n = t.size();
  std::vector<Vertex> parent(n, -1);
  VertexSet seen(n);
  seen.insert(x);
  std::vector<Vertex> queue{x};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Vertex u = queue[h];
    bool done = false;
    t.out_neighbors(u).for_each([&](Vertex w) {
      if (done || seen.contains(w)) return;
      seen.insert(w);
      parent[w] = u;
      queue.push_back(w);
      if (w == y) done = true;
    });
    if (done) break;
  }
  if (!seen.contains(y)) return {};
  std::vector<Vertex> p;
  for (Vertex v = y; v != -1; v = parent[v]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

// Hamiltonian path of T[R] (any endpoints) built by insertion; every
// tournament has one.
std::vector<Vertex> any_hamiltonian_path(const Tournament& t, std::vector<Vertex> rest, std::mt19937_64& rng) {
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<Vertex> p;
  for (Vertex w : rest) {
    std::size_t pos = 0;
    while (pos < p.size() && t.has_edge(p[pos], w)) ++pos;
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(pos), w);
  }
  return p;
}

bool insertion_attempt(const Tournament& t, Vertex x, Vertex y, std::mt19937_64& rng, std::vector<Vertex>& out) {
  const int n = t.size();
  std::vector<Vertex> path = shortest_path(t, x, y);
  if (path.empty()) return false;
  VertexSet on_path(n);
  for (Vertex v : path) on_path.insert(v);
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (!on_path.contains(v)) rest.push_back(v);

  int exchanges_left = 40 * n;
  while (!rest.empty()) {
    bool progress = false;
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t r = 0; r < rest.size();) {
      const Vertex w = rest[r];
      std::vector<std::size_t> slots;
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (t.has_edge(path[i], w) && t.has_edge(w, path[i + 1])) slots.push_back(i);
      if (slots.empty()) {
        ++r;
        continue;
      }
      const std::size_t i = slots[rng() % slots.size()];
      path.insert(path.begin() + static_cast<std::ptrdiff_t>(i + 1), w);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
      progress = true;
    }
    if (rest.empty()) break;
    if (!progress) {
      // Splice a whole segment of a Hamiltonian path of the leftovers.
      const std::vector<Vertex> q = any_hamiltonian_path(t, rest, rng);
      for (std::size_t a = 0; a < q.size() && !progress; ++a)
        for (std::size_t b = q.size(); b-- > a && !progress;)
          for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (t.has_edge(path[i], q[a]) && t.has_edge(q[b], path[i + 1])) {
              path.insert(path.begin() + static_cast<std::ptrdiff_t>(i + 1), q.begin() + static_cast<std::ptrdiff_t>(a),
                          q.begin() + static_cast<std::ptrdiff_t>(b + 1));
              for (std::size_t c = a; c <= b; ++c) rest.erase(std::find(rest.begin(), rest.end(), q[c]));
              progress = true;
              break;
            }
    }
    if (!progress && exchanges_left-- > 0) {
      // Swap a leftover vertex with an interior path vertex it can replace.
      std::vector<std::pair<std::size_t, std::size_t>> swaps;
      for (std::size_t r = 0; r < rest.size(); ++r)
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
          if (t.has_edge(path[i - 1], rest[r]) && t.has_edge(rest[r], path[i + 1])) swaps.emplace_back(r, i);
      if (!swaps.empty()) {
        auto [r, i] = swaps[rng() % swaps.size()];
        std::swap(rest[r], path[i]);
        progress = true;
      }
    }
    if (!progress) return false;
  }
  out = std::move(path);
  return true;
}

class Backtracker {
 public:
  Backtracker(const Tournament& t, Vertex x, Vertex y, std::uint64_t budget)
      : t_(t), x_(x), y_(y), budget_(budget), unvisited_(VertexSet::full(t.size())) {
    unvisited_.erase(x);
    unvisited_.erase(y);
  }

  Verdict run(std::vector<Vertex>& out) {
    path_.push_back(x_);
    const bool found = dfs(x_);
    if (found) {
      path_.push_back(y_);
      out = path_;
      return Verdict::yes;
    }
    return exhausted_ ? Verdict::unknown : Verdict::no;
  }

 private:
  bool feasible(Vertex cur) const {
    // Everything left must be reachable from cur and must reach y, using
    // only unvisited vertices.
    VertexSet with_y = unvisited_;
    with_y.insert(y_);
    const VertexSet fwd = reach_within(t_.graph(), cur, with_y, false);
    if (!with_y.is_subset_of(fwd)) return false;
    const VertexSet bwd = reach_within(t_.graph(), y_, unvisited_, true);
    return unvisited_.is_subset_of(bwd);
  }

  bool dfs(Vertex cur) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (unvisited_.empty()) return t_.has_edge(cur, y_);
    if (!feasible(cur)) return false;
    std::vector<std::pair<int, Vertex>> cands;
    t_.out_neighbors(cur).for_each_in(unvisited_, [&](Vertex w) {
      cands.emplace_back(t_.out_neighbors(w).count_common(unvisited_), w);
    });
    std::sort(cands.begin(), cands.end());
    for (auto [deg, w] : cands) {
      unvisited_.erase(w);
      path_.push_back(w);
      if (dfs(w)) return true;
      path_.pop_back();
      unvisited_.insert(w);
      if (exhausted_) return false;
    }
    return false;
  }

  const Tournament& t_;
  Vertex x_, y_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  VertexSet unvisited_;
  std::vector<Vertex> path_;
};

}  // namespace

HamiltonianResult hamiltonian_path(const Tournament& t, Vertex x, Vertex y, const HamiltonianOptions& options) {
  const int n = t.size();
  if (x < 0 || y < 0 || x >= n || y >= n) throw InvalidArgument("hamiltonian_path: endpoint out of range");
  if (x == y) throw InvalidArgument("hamiltonian_path: endpoints must differ");
  if (n <= std::min(options.exact_threshold, 26)) return exact_dp(t, x, y);

  HamiltonianResult res;
  // Cheap certificates of absence.
  VertexSet all = VertexSet::full(n);
  if (!all.is_subset_of(reach_within(t.graph(), x, all, false)) ||
      !all.is_subset_of(reach_within(t.graph(), y, all, true))) {
    res.verdict = Verdict::no;
    return res;
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Vertex> path;
  for (int r = 0; r < options.insertion_restarts; ++r)
    if (insertion_attempt(t, x, y, rng, path)) {
      res.verdict = Verdict::yes;
      res.path.vertices = std::move(path);
      return res;
    }
  Backtracker bt(t, x, y, options.node_budget);
  res.verdict = bt.run(path);
  if (res.verdict == Verdict::yes) res.path.vertices = std::move(path);
  return res;
}

}  // namespace tourpart
