#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "tourpart/connectivity.hpp"

namespace tourpart {
namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

int wanted_parity(Parity p) { return p == Parity::odd ? 1 : 0; }

// dist[2v+q]: length of a shortest walk v -> y of parity q whose vertices
// strictly after v and before y all lie in `free`.
void parity_distances(const Tournament& t, Vertex y, const VertexSet& free, std::vector<int>& dist,
                      std::vector<int>& queue) {
  const int n = t.size();
  dist.assign(2 * static_cast<std::size_t>(n), kInf);
  VertexSet open[2] = {VertexSet::full(n), VertexSet::full(n)};
  queue.clear();
  dist[2 * y] = 0;
  open[0].erase(y);
  queue.push_back(2 * y);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int state = queue[h];
    const Vertex u = state >> 1;
    const int q = state & 1;
    if (u != y && !free.contains(u)) continue;
    const int nq = q ^ 1;
    t.in_neighbors(u).for_each_in(open[nq], [&](Vertex w) {
      open[nq].erase(w);
      dist[2 * w + nq] = dist[state] + 1;
      queue.push_back(2 * w + nq);
    });
  }
}

class Solver {
 public:
  Solver(const Tournament& t, const LinkageRequest& req, std::uint64_t budget)
      : t_(t), req_(req), n_(t.size()), budget_(budget), blocked_(n_), used_(n_) {
    if (req.forbidden.universe() == n_) blocked_ = req.forbidden;
    for (const auto& p : req.pairs) {
      blocked_.insert(p.from);
      blocked_.insert(p.to);
    }
    paths_.resize(req.pairs.size());
  }

  LinkageResult run() {
    LinkageResult res;
    const bool found = solve(0);
    res.nodes = nodes_;
    if (found) {
      res.verdict = Verdict::yes;
      for (auto& p : paths_) res.paths.push_back(DiPath{p});
    } else {
      res.verdict = exhausted_ ? Verdict::unknown : Verdict::no;
    }
    return res;
  }

 private:
  VertexSet free_set() const { return (blocked_ | used_).complement(); }

  int remaining_bound(const LinkPair& p, const std::vector<int>& dist, Vertex v, int len) const {
    if (p.parity == Parity::any) return std::min(dist[2 * v], dist[2 * v + 1]);
    const int q = (wanted_parity(p.parity) - len) & 1;
    return dist[2 * v + q];
  }

  int cap(const LinkPair& p) const { return p.max_length ? *p.max_length : n_; }

  bool parity_ok(const LinkPair& p, int len) const {
    return p.parity == Parity::any || (len & 1) == wanted_parity(p.parity);
  }

  // Every later pair still has a walk of the right parity within its cap.
  bool residual_feasible(std::size_t from) {
    const VertexSet free = free_set();
    for (std::size_t j = from; j < req_.pairs.size(); ++j) {
      const LinkPair& p = req_.pairs[j];
      parity_distances(t_, p.to, free, dist_, queue_);
      const int d = remaining_bound(p, dist_, p.from, 0);
      if (d >= kInf || d > cap(p)) return false;
    }
    return true;
  }

  bool solve(std::size_t i) {
    if (i == req_.pairs.size()) return true;
    if (!residual_feasible(i)) return false;
    const LinkPair& p = req_.pairs[i];
    current_ = {p.from};
    return extend(i, p.from, 0);
  }

  bool direct_taken(const LinkPair& p) const { return direct_.count({p.from, p.to}) > 0; }

  bool extend(std::size_t i, Vertex cur, int len) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const LinkPair& p = req_.pairs[i];
    const int limit = cap(p);

    if (t_.has_edge(cur, p.to) && len + 1 <= limit && len + 1 >= p.min_length && parity_ok(p, len + 1) &&
        !(len == 0 && direct_taken(p))) {
      paths_[i] = current_;
      paths_[i].push_back(p.to);
      if (len == 0) direct_.insert({p.from, p.to});
      const std::vector<Vertex> saved = current_;
      if (solve(i + 1)) return true;
      current_ = saved;
      if (len == 0) direct_.erase({p.from, p.to});
      if (exhausted_) return false;
      // Any extension only uses more vertices, so later pairs fail too.
      if (len > 0) return false;
    }
    if (len + 2 > limit) return false;

    const VertexSet free = free_set();
    parity_distances(t_, p.to, free, dist_, queue_);
    std::vector<std::pair<int, Vertex>> cands;
    t_.out_neighbors(cur).for_each_in(free, [&](Vertex w) {
      const int d = remaining_bound(p, dist_, w, len + 1);
      if (d < kInf && len + 1 + d <= limit) cands.emplace_back(d, w);
    });
    std::sort(cands.begin(), cands.end());
    for (auto [d, w] : cands) {
      used_.insert(w);
      current_.push_back(w);
      if (residual_feasible(i + 1) && extend(i, w, len + 1)) return true;
      current_.pop_back();
      used_.erase(w);
      if (exhausted_) return false;
    }
    return false;
  }

  const Tournament& t_;
  const LinkageRequest& req_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  VertexSet blocked_, used_;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<Vertex> current_;
  std::set<std::pair<Vertex, Vertex>> direct_;
  std::vector<int> dist_, queue_;
};

void validate(const Tournament& t, const LinkageRequest& req) {
  const int n = t.size();
  if (req.pairs.empty()) throw InvalidArgument("linkage request without pairs");
  if (req.forbidden.universe() != 0 && req.forbidden.universe() != n)
    throw InvalidArgument("forbidden set has the wrong universe");
  VertexSet ends(n);
  for (const auto& p : req.pairs) {
    if (p.from < 0 || p.to < 0 || p.from >= n || p.to >= n) throw InvalidArgument("linkage endpoint out of range");
    if (p.from == p.to) throw InvalidArgument("linkage pair with equal endpoints");
    if (p.min_length < 1) throw InvalidArgument("minimum path length must be positive");
    if (p.max_length && *p.max_length < 1) throw InvalidArgument("maximum path length must be positive");
    if (req.semantics == Disjointness::full) {
      if (ends.contains(p.from) || ends.contains(p.to))
        throw InvalidArgument("fully disjoint linkage needs distinct endpoints");
      ends.insert(p.from);
      ends.insert(p.to);
    }
  }
}

}  // namespace

LinkageResult find_disjoint_paths(const Tournament& t, const LinkageRequest& req, std::uint64_t node_budget) {
  validate(t, req);
  Solver s(t, req, node_budget);
  return s.run();
}

Verdict is_k_linked(const Tournament& t, int k, std::uint64_t node_budget) {
  if (k < 1) throw InvalidArgument("is_k_linked: k must be at least 1");
  const int n = t.size();
  if (n < 2 * k) return Verdict::no;
  std::vector<Vertex> tuple(2 * k);
  VertexSet taken(n);
  bool unknown = false;
  bool refuted = false;
  // Depth-first enumeration of ordered 2k-tuples (x_1, y_1, ..., x_k, y_k).
  auto rec = [&](auto&& self, int depth) -> void {
    if (refuted) return;
    if (depth == 2 * k) {
      LinkageRequest req;
      req.semantics = Disjointness::full;
      for (int i = 0; i < k; ++i) req.pairs.push_back(LinkPair{tuple[2 * i], tuple[2 * i + 1], Parity::any, 1, std::nullopt});
      const Verdict v = find_disjoint_paths(t, req, node_budget).verdict;
      if (v == Verdict::no) refuted = true;
      if (v == Verdict::unknown) unknown = true;
      return;
    }
    for (Vertex v = 0; v < n && !refuted; ++v) {
      if (taken.contains(v)) continue;
      taken.insert(v);
      tuple[depth] = v;
      self(self, depth + 1);
      taken.erase(v);
    }
  };
  rec(rec, 0);
  if (refuted) return Verdict::no;
  return unknown ? Verdict::unknown : Verdict::yes;
}

bool meets_linkage_connectivity_bound(const Tournament& t, int k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const int need = 452 * k;
  if (t.size() <= need) return false;
  return vertex_connectivity(t, need) >= need;
}

}  // namespace tourpart
