#pragma once

// Unit vertex-capacity max-flow by vertex splitting.  Every vertex other
// than the source has an implicit in/out pair joined by a capacity-one arc;
// the residual graph is never materialised.  Flow is stored as a
// predecessor/successor pair per used vertex, which is enough because each
// used vertex carries exactly one unit.

#include <algorithm>
#include <vector>

#include "tourpart/core.hpp"

namespace tourpart::detail {

class UnitVertexFlow {
 public:
  static constexpr Vertex kNone = -1;
  static constexpr Vertex kSink = -2;

  // `backward` walks in-rows, i.e. computes flow in the reversed graph.
  // `allowed` limits the vertices paths may use besides source and target.
  // With `side`, every arc must cross between `side` and its complement.
  UnitVertexFlow(const Digraph& g, bool backward, const VertexSet* allowed = nullptr,
                 const VertexSet* side = nullptr)
      : g_(g),
        backward_(backward),
        n_(g.size()),
        allowed_(allowed ? *allowed : VertexSet::full(g.size())),
        pred_(n_, kNone),
        succ_(n_, kNone),
        parent_(2 * static_cast<std::size_t>(n_), -1),
        reached_in_(n_),
        reached_out_(n_) {
    if (side) {
      side_ = *side;
      has_side_ = true;
      other_side_ = side->complement();
    }
  }

  // Internally disjoint s -> t paths, up to `limit`.  The arc s -> t counts
  // as one path unless `skip_direct`.
  int run_to_vertex(Vertex s, Vertex t, int limit, bool skip_direct) {
    reset(s);
    t_ = t;
    multi_ = false;
    skip_direct_ = skip_direct;
    internal_ = allowed_;
    internal_.erase(s);
    internal_.erase(t);
    int flow = 0;
    while (flow < limit && augment()) ++flow;
    return flow;
  }

  // Paths from s to the set `targets`, every vertex but s of capacity one.
  int run_to_set(Vertex s, const VertexSet& targets, int limit) {
    reset(s);
    t_ = kNone;
    multi_ = true;
    targets_ = targets;
    internal_ = allowed_;
    internal_.erase(s);
    int flow = 0;
    while (flow < limit && augment()) ++flow;
    return flow;
  }

  // After a run that stopped below its limit: the vertices whose split arc
  // crosses the final residual cut.
  VertexSet min_cut() const {
    VertexSet cut(n_);
    internal_.for_each([&](Vertex v) {
      if (reached_in_.contains(v) && !reached_out_.contains(v)) cut.insert(v);
    });
    return cut;
  }

  // Flow paths of the last single-target run, ordered by first hop.  The
  // direct arc is included when it carries flow.
  std::vector<std::vector<Vertex>> paths() const {
    std::vector<std::vector<Vertex>> out;
    if (direct_used_) out.push_back({s_, t_});
    for (Vertex w = 0; w < n_; ++w) {
      if (pred_[w] != s_) continue;
      std::vector<Vertex> p{s_};
      Vertex cur = w;
      while (cur >= 0 && cur != t_) {
        p.push_back(cur);
        cur = succ_[cur];
      }
      if (cur == t_) p.push_back(t_);
      out.push_back(std::move(p));
    }
    if (backward_)
      for (auto& p : out) std::reverse(p.begin(), p.end());
    return out;
  }

 private:
  const VertexSet& row(Vertex v) const { return backward_ ? g_.in_neighbors(v) : g_.out_neighbors(v); }
  bool crosses(Vertex u, Vertex w) const { return !has_side_ || side_.contains(u) != side_.contains(w); }
  bool used(Vertex v) const { return pred_[v] != kNone; }

  void reset(Vertex s) {
    s_ = s;
    direct_used_ = false;
    std::fill(pred_.begin(), pred_.end(), kNone);
    std::fill(succ_.begin(), succ_.end(), kNone);
  }

  static int in_node(Vertex v) { return 2 * v; }
  static int out_node(Vertex v) { return 2 * v + 1; }

  bool augment() {
    reached_in_.clear();
    reached_out_.clear();
    reached_out_.insert(s_);
    reached_in_.insert(s_);
    queue_.clear();
    queue_.push_back(out_node(s_));
    int last = -1;  // out node from which the terminal was reached
    for (std::size_t h = 0; h < queue_.size() && last < 0; ++h) {
      const int node = queue_[h];
      const Vertex v = node >> 1;
      if (node & 1) {
        if (!multi_ && row(v).contains(t_) && crosses(v, t_) && succ_[v] != t_) {
          const bool direct = v == s_;
          if (!direct || (!skip_direct_ && !direct_used_)) {
            last = node;
            break;
          }
        }
        const VertexSet& r = row(v);
        const VertexSet* mask = &internal_;
        if (has_side_) {
          scratch_ = internal_;
          scratch_ &= side_.contains(v) ? other_side_ : side_;
          mask = &scratch_;
        }
        r.for_each_in(*mask, [&](Vertex w) {
          if (last >= 0 || reached_in_.contains(w) || succ_[v] == w) return;
          reached_in_.insert(w);
          parent_[in_node(w)] = node;
          queue_.push_back(in_node(w));
        });
        if (v != s_ && used(v) && !reached_in_.contains(v)) {
          reached_in_.insert(v);
          parent_[in_node(v)] = node;
          queue_.push_back(in_node(v));
        }
      } else {
        if (!used(v)) {
          if (!reached_out_.contains(v)) {
            reached_out_.insert(v);
            parent_[out_node(v)] = node;
            if (multi_ && targets_.contains(v)) {
              last = out_node(v);
              break;
            }
            queue_.push_back(out_node(v));
          }
        } else {
          const Vertex p = pred_[v];
          if (!reached_out_.contains(p)) {
            reached_out_.insert(p);
            parent_[out_node(p)] = node;
            queue_.push_back(out_node(p));
          }
        }
      }
    }
    if (last < 0) return false;

    std::vector<int>& seq = seq_;
    seq.clear();
    for (int node = last; node != out_node(s_); node = parent_[node]) seq.push_back(node);
    seq.push_back(out_node(s_));
    std::reverse(seq.begin(), seq.end());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      const int a = seq[i], b = seq[i + 1];
      const Vertex u = a >> 1, w = b >> 1;
      if (u == w) continue;
      if (a & 1) {
        pred_[w] = u;
        if (u != s_) succ_[u] = w;
      } else {
        if (pred_[u] == w) pred_[u] = kNone;
        if (succ_[w] == u) succ_[w] = kNone;
      }
    }
    const Vertex end = last >> 1;
    if (multi_) {
      succ_[end] = kSink;
    } else if (end == s_) {
      direct_used_ = true;
    } else {
      succ_[end] = t_;
    }
    return true;
  }

  const Digraph& g_;
  bool backward_;
  int n_;
  VertexSet allowed_;
  VertexSet side_, other_side_;
  bool has_side_ = false;

  Vertex s_ = kNone, t_ = kNone;
  bool multi_ = false, skip_direct_ = false, direct_used_ = false;
  VertexSet targets_;
  VertexSet internal_;
  VertexSet scratch_;

  std::vector<Vertex> pred_, succ_;
  std::vector<int> parent_;
  std::vector<int> queue_;
  std::vector<int> seq_;
  VertexSet reached_in_, reached_out_;
};

}  // namespace tourpart::detail
