#include "tourpart/domination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tourpart {
namespace {

// Rows seen through an optional global reversal.
struct View {
  const Tournament& t;
  bool reversed;
  const VertexSet& out(Vertex v) const { return reversed ? t.in_neighbors(v) : t.out_neighbors(v); }
  const VertexSet& in(Vertex v) const { return reversed ? t.out_neighbors(v) : t.in_neighbors(v); }
};

VertexSet greedy_dominating(const View& view, const VertexSet& within) {
  VertexSet s(view.t.size());
  VertexSet common = within;
  while (!common.empty()) {
    Vertex best = -1;
    int best_deg = 0;
    common.for_each([&](Vertex v) {
      const int d = view.out(v).count_common(common);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    });
    s.insert(best);
    common &= view.out(best);
  }
  return s;
}

// Least in-degree vertex of T[set], lowest id on ties.
Vertex min_in_degree(const View& view, const VertexSet& set, int* degree) {
  Vertex best = -1;
  int best_deg = 0;
  set.for_each([&](Vertex v) {
    const int d = view.in(v).count_common(set);
    if (best < 0 || d < best_deg) {
      best = v;
      best_deg = d;
    }
  });
  if (degree) *degree = best_deg;
  return best;
}

// |e| <= d / 2^p without floating point.
bool within_halving(long long e, long long d, int p) {
  if (p >= 40) return e == 0;
  return (e << p) <= d;
}

DominatingStructure build(const View& view, Vertex v, int c, const VertexSet& within) {
  const int n = view.t.size();
  if (v < 0 || v >= n || !within.contains(v)) throw InvalidArgument("dominating structure: anchor outside host");
  if (c < 2) throw InvalidArgument("dominating structure needs c >= 2");
  VertexSet e = view.in(v) & within;
  const int d = e.count();
  if (c - 1 >= 31 || d < (1 << (c - 1)))
    throw PreconditionViolation("dominating structure: degree " + std::to_string(d) + " of vertex " +
                                std::to_string(v) + " is below 2^(c-1) for c = " + std::to_string(c));

  DominatingStructure s;
  s.anchor = v;
  s.c = c;
  s.degree = d;
  std::vector<Vertex> a_seq{v};  // v_1, v_2, ...
  Vertex w = -1;                 // the single vertex of W_i, if any
  for (int i = 1;; ++i) {
    const int ei = e.count();
    s.trace.push_back(ei);
    if (!within_halving(ei, d, i - 1))
      throw InvariantViolation("halving invariant |E_i| <= d/2^(i-1) failed at step " + std::to_string(i));
    if (w < 0 && ei == 0) throw InvariantViolation("empty exception set with no reserved vertex");
    if (within_halving(ei, d, c - 2)) {
      const Vertex a = w >= 0 ? w : e.first();
      e.erase(a);
      s.extremal = a;
      s.chain.push_back(a);
      for (auto it = a_seq.rbegin(); it != a_seq.rend(); ++it) s.chain.push_back(*it);
      s.exceptions = e;
      return s;
    }
    if (i >= c) throw InvariantViolation("dominating structure did not close within c steps");
    int deg = 0;
    const Vertex x = min_in_degree(view, e, &deg);
    Vertex next = x;
    if (deg == 0 && w < 0) {
      w = x;
      VertexSet rest = e;
      rest.erase(x);
      next = min_in_degree(view, rest, nullptr);
    }
    a_seq.push_back(next);
    e &= view.in(next);
    if (w >= 0) e.erase(w);
  }
}

}  // namespace

VertexSet greedy_in_dominating_set(const Tournament& t, const VertexSet& within) {
  return greedy_dominating(View{t, false}, within);
}

VertexSet greedy_out_dominating_set(const Tournament& t, const VertexSet& within) {
  return greedy_dominating(View{t, true}, within);
}

DominatingStructure out_dominating_structure(const Tournament& t, Vertex v, int c, const VertexSet& within) {
  DominatingStructure s = build(View{t, false}, v, c, within);
  s.mode = DomMode::out;
  return s;
}

DominatingStructure in_dominating_structure(const Tournament& t, Vertex v, int c, const VertexSet& within) {
  DominatingStructure s = build(View{t, true}, v, c, within);
  s.mode = DomMode::in;
  std::reverse(s.chain.begin(), s.chain.end());
  return s;
}

std::optional<std::string> audit_structure(const Tournament& t, const VertexSet& within,
                                           const DominatingStructure& s) {
  const int n = t.size();
  const bool out = s.mode == DomMode::out;
  const int m = static_cast<int>(s.chain.size());
  if (m < 2 || m > s.c) return "size of the transitive set outside [2, c]";
  const VertexSet members = s.members(n);
  if (members.count() != m) return "repeated vertex in the transitive set";
  if (!members.is_subset_of(within)) return "transitive set leaves the host";
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!t.has_edge(s.chain[i], s.chain[j])) return "transitive set is not ordered source to sink";
  if (out && (s.chain.front() != s.extremal || s.chain.back() != s.anchor)) return "wrong source or sink";
  if (!out && (s.chain.front() != s.anchor || s.chain.back() != s.extremal)) return "wrong source or sink";
  if (members.intersects(s.exceptions)) return "transitive set meets the exception set";
  if (!s.exceptions.is_subset_of(within)) return "exception set leaves the host";
  VertexSet core = members;
  core.erase(s.extremal);
  const VertexSet rest = within - members - s.exceptions;
  std::optional<std::string> err;
  rest.for_each([&](Vertex u) {
    if (err) return;
    const VertexSet& row = out ? t.in_neighbors(u) : t.out_neighbors(u);
    if (!row.intersects(core)) err = "vertex " + std::to_string(u) + " is not dominated";
  });
  if (err) return err;
  const int d = (out ? t.in_neighbors(s.anchor) : t.out_neighbors(s.anchor)).count_common(within);
  if (d != s.degree) return "recorded anchor degree is wrong";
  if (!within_halving(s.exceptions.count(), d, s.c - 2)) return "exception set exceeds (1/2)^(c-2) d";
  for (std::size_t i = 0; i < s.trace.size(); ++i)
    if (!within_halving(s.trace[i], d, static_cast<int>(i))) return "halving trace violated";
  return std::nullopt;
}

CoreSet core_set(const Tournament& t, int k, const VertexSet& within) {
  if (k < 1) throw InvalidArgument("core_set needs k >= 1");
  const int n = within.count();
  if (n < 4) throw InvalidArgument("core_set needs at least 4 vertices");
  CoreSet res;
  res.k = k;
  if (n < 3.0 * k * std::log2(static_cast<double>(n))) {
    res.z = within;
    res.degenerate = true;
    return res;
  }
  res.z = VertexSet(t.size());
  VertexSet left_in = within, left_out = within;
  for (int i = 0; i < k; ++i) {
    if (!left_in.empty()) {
      const VertexSet s = greedy_in_dominating_set(t, left_in);
      res.z |= s;
      left_in -= s;
    }
    if (!left_out.empty()) {
      const VertexSet s = greedy_out_dominating_set(t, left_out);
      res.z |= s;
      left_out -= s;
    }
  }
  return res;
}

}  // namespace tourpart
