#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "tourpart/connectivity.hpp"
#include "tourpart/partition.hpp"

namespace tourpart {

const char* to_string(Color c) {
  switch (c) {
    case Color::alpha: return "alpha";
    case Color::beta: return "beta";
    case Color::none: break;
  }
  return "none";
}

void Coloring::set(Vertex v, Color c) {
  if (v < 0 || v >= size()) throw InvalidArgument("colouring: vertex out of range");
  if (c == Color::none) throw InvalidArgument("colouring: cannot assign 'none'");
  if (color_[v] != Color::none)
    throw InvariantViolation("vertex " + std::to_string(v) + " is already coloured " + to_string(color_[v]));
  color_[v] = c;
  (c == Color::alpha ? alpha_ : beta_).insert(v);
}

// ------------------------------------------------------------------- safety

SafetyReport is_safe(const Tournament& t, Vertex v, const SafetyContext& ctx) {
  if (!ctx.coloring) throw InvalidArgument("safety context without a colouring");
  const Coloring& col = *ctx.coloring;
  if (v < 0 || v >= t.size() || !col.is_colored(v)) throw InvalidArgument("safety is defined for coloured vertices only");
  const VertexSet& own = col.of(col[v]);
  const VertexSet colored = col.colored();
  const VertexSet fwd = ctx.d | ctx.e_b;
  const VertexSet bwd = ctx.d | ctx.e_a;
  const Digraph& g = t.graph();
  SafetyReport r;
  r.forwards = safe_flow(g, v, own - fwd, ctx.k, Direction::forward, own);
  r.backwards = safe_flow(g, v, own - bwd, ctx.k, Direction::backward, own);
  r.alt_forwards = safe_flow_bipartite(g, v, colored - fwd, ctx.k, Direction::forward, colored, col.alpha());
  r.alt_backwards = safe_flow_bipartite(g, v, colored - bwd, ctx.k, Direction::backward, colored, col.alpha());
  return r;
}

SafetyScan scan_safety(const Tournament& t, const SafetyContext& ctx) {
  if (!ctx.coloring) throw InvalidArgument("safety context without a colouring");
  const Coloring& col = *ctx.coloring;
  const Digraph& g = t.graph();
  const VertexSet colored = col.colored();
  const VertexSet fwd = ctx.d | ctx.e_b;
  const VertexSet bwd = ctx.d | ctx.e_a;
  SafetyScan s;
  s.forwards = VertexSet(t.size());
  s.backwards = VertexSet(t.size());
  for (Color c : {Color::alpha, Color::beta}) {
    const VertexSet& own = col.of(c);
    if (own.empty()) continue;
    s.forwards |= safe_vertices(g, own - fwd, ctx.k, Direction::forward, own);
    s.backwards |= safe_vertices(g, own - bwd, ctx.k, Direction::backward, own);
  }
  s.alt_forwards = safe_vertices(g, colored - fwd, ctx.k, Direction::forward, colored, &col.alpha());
  s.alt_backwards = safe_vertices(g, colored - bwd, ctx.k, Direction::backward, colored, &col.alpha());
  return s;
}

// ------------------------------------------------------------------- params

int paper_c(int k) { return static_cast<int>(std::ceil(std::log2(120.0 * k * k))) + 2; }

double paper_min_degree(int k) { return 1e9 * std::pow(k, 6) * std::log2(2.0 * k); }

PipelineParams PipelineParams::paper(int k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  PipelineParams p;
  p.k = k;
  p.r = k;
  p.c = paper_c(k);
  p.bundle_size = static_cast<std::int64_t>(std::ceil(1e5 * std::pow(k, 4) * std::log2(2.0 * k)));
  p.short_cap = 10 * k + 10;
  p.claim1_budget = 5e8 * std::pow(k, 6) * std::log2(2.0 * k);
  p.growth = 9 * k * k;
  p.segments = {k, k, k + 2, 2 * k + 2, 0, 2 * k + 2, k + 2, k, k};
  return p;
}

PipelineParams PipelineParams::relaxed(int k, int n) {
  PipelineParams p = paper(k);
  p.r = 1;
  const int cap = static_cast<int>(std::floor(std::log2(std::max(n, 8) / 4.0)));
  p.c = std::max(2, std::min(p.c, cap));
  p.bundle_size = 8;
  p.claim1_budget = n;
  return p;
}

bool PipelineParams::theorem_backed() const {
  PipelineParams ref = paper(k);
  return r == ref.r && c == ref.c && bundle_size == ref.bundle_size && short_cap == ref.short_cap &&
         claim1_budget == ref.claim1_budget && growth == ref.growth && segments == ref.segments;
}

void PipelineParams::validate() const {
  auto fail = [](const std::string& m) { throw InvalidArgument("pipeline parameters: " + m); };
  if (k < 1) fail("k must be at least 1");
  if (r < 1) fail("r must be at least 1");
  if (c < 2) fail("c must be at least 2");
  if (bundle_size < 1) fail("bundle_size must be positive");
  if (!(claim1_budget > 0)) fail("claim1_budget must be positive");
  if (growth < (2 * k + 1) * (2 * k + 1)) fail("growth must be at least (2k+1)^2");
  int fixed = 0;
  for (int t = 0; t < 9; ++t) {
    if (t == 4) continue;
    if (segments[t] < 1) fail("segment sizes must be positive");
    fixed += segments[t];
  }
  // Interiors of long paths have at least short_cap - 1 vertices and Q^5
  // must keep at least one of them.
  if (fixed + 1 > short_cap - 1) fail("segments do not fit into paths of length short_cap");
  if (segments[0] + segments[1] < k || segments[7] + segments[8] < k) fail("outer segments hold fewer than k vertices");
}

namespace {

struct Field {
  const char* key;
  enum Kind { integer, wide, real, unsigned64 } kind;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string PipelineParams::to_text() const {
  std::ostringstream o;
  o << "k=" << k << "\nr=" << r << "\nc=" << c << "\nbundle_size=" << bundle_size << "\nshort_cap=" << short_cap
    << "\nclaim1_budget=" << fmt_double(claim1_budget) << "\ngrowth=" << growth;
  for (int t = 0; t < 9; ++t)
    if (t != 4) o << "\nseg" << t + 1 << "=" << segments[t];
  o << "\nlinkage_budget=" << linkage_budget << "\n";
  return o.str();
}

std::string PipelineParams::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_text()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PipelineParams parse_params(std::string_view text, PipelineParams base) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no, static_cast<int>(first) + 1);
    auto trim = [](std::string_view s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string_view::npos) return std::string_view{};
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const int vcol = static_cast<int>(line.find_first_not_of(" \t", eq + 1)) + 1;
    auto as_int = [&](auto& out) {
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
      if (ec != std::errc{} || p != value.data() + value.size() || value.empty())
        throw ParseError("malformed integer for '" + key + "'", line_no, vcol);
    };
    if (key == "k") as_int(base.k);
    else if (key == "r") as_int(base.r);
    else if (key == "c") as_int(base.c);
    else if (key == "bundle_size") as_int(base.bundle_size);
    else if (key == "short_cap") as_int(base.short_cap);
    else if (key == "growth") as_int(base.growth);
    else if (key == "linkage_budget") as_int(base.linkage_budget);
    else if (key == "claim1_budget") {
      std::string v(value);
      char* stop = nullptr;
      const double d = std::strtod(v.c_str(), &stop);
      if (v.empty() || *stop != '\0') throw ParseError("malformed number for 'claim1_budget'", line_no, vcol);
      base.claim1_budget = d;
    } else if (key.size() == 4 && key.rfind("seg", 0) == 0 && key[3] >= '1' && key[3] <= '9' && key[3] != '5') {
      as_int(base.segments[key[3] - '1']);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, static_cast<int>(first) + 1);
    }
    if (end == text.size()) break;
  }
  return base;
}

Feasibility pipeline_feasibility(const Tournament& t, const PipelineParams& p) {
  p.validate();
  Feasibility f;
  const int n = t.size();
  if (n < 12 * p.r) {
    f.ok = false;
    f.reason = "infeasible: needs at least " + std::to_string(12 * p.r) + " vertices, have " + std::to_string(n);
    return f;
  }
  if (p.theorem_backed()) {
    int delta0 = n;
    for (Vertex v = 0; v < n; ++v) delta0 = std::min({delta0, t.in_degree(v), t.out_degree(v)});
    const double need = paper_min_degree(p.k);
    if (delta0 < need) {
      f.ok = false;
      f.reason = "infeasible: requires δ⁰ ≥ 10⁹k⁶log 2k = " + fmt_double(need) + ", have δ⁰ = " + std::to_string(delta0);
    }
  }
  return f;
}

// ---------------------------------------------------------------- selection

std::optional<bool> connector_even(IndexClass c) {
  switch (c) {
    case IndexClass::alpha_alpha:
    case IndexClass::beta_beta: return true;
    case IndexClass::alpha_beta:
    case IndexClass::beta_alpha: return false;
    default: return std::nullopt;
  }
}

ExtremalSets select_extremal_sets(const Tournament& t, int count) {
  const int n = t.size();
  if (count < 1) throw InvalidArgument("extremal sets need a positive count");
  if (n < 12 * count) throw InvalidArgument("extremal sets need at least 12 per structure class");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return t.in_degree(a) < t.in_degree(b); });
  ExtremalSets e;
  e.x.assign(order.begin(), order.begin() + 6 * count);
  VertexSet xs = VertexSet::of(n, e.x);
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (!xs.contains(v)) rest.push_back(v);
  std::stable_sort(rest.begin(), rest.end(), [&](Vertex a, Vertex b) { return t.out_degree(a) < t.out_degree(b); });
  e.y.assign(rest.begin(), rest.begin() + 6 * count);
  VertexSet ys = VertexSet::of(n, e.y);
  e.delta_in_hat = n;
  e.delta_out_hat = n;
  for (Vertex v = 0; v < n; ++v) {
    if (!xs.contains(v)) e.delta_in_hat = std::min(e.delta_in_hat, t.in_degree(v));
    if (!ys.contains(v)) e.delta_out_hat = std::min(e.delta_out_hat, t.out_degree(v));
  }
  return e;
}

SafetyContext PipelineState::safety() const {
  SafetyContext ctx;
  ctx.d = d;
  ctx.e_a = e_a;
  ctx.e_b = e_b;
  ctx.coloring = &coloring;
  ctx.k = k;
  return ctx;
}

const char* to_string(PartitionMode m) {
  switch (m) {
    case PartitionMode::pipeline: return "pipeline";
    case PartitionMode::search: return "search";
    case PartitionMode::automatic: return "auto";
  }
  return "?";
}

std::string format_partition(const PartitionResult& r) {
  std::ostringstream o;
  auto list = [&](const char* name, const VertexSet& s) {
    o << name << ":";
    s.for_each([&](Vertex v) { o << ' ' << v; });
    o << '\n';
  };
  list("V1", r.v1);
  list("V2", r.v2);
  o << "verified: " << (r.verified ? "true" : "false") << '\n';
  o << "mode: " << to_string(r.mode) << '\n';
  o << "connectivity: " << r.connectivity[0] << ' ' << r.connectivity[1] << ' ' << r.connectivity[2]
    << (r.connectivity_exact ? " exact" : " capped") << '\n';
  o << "params: " << (r.params_fingerprint.empty() ? "-" : r.params_fingerprint) << '\n';
  if (!r.diagnostic.empty()) o << "diagnostic: " << r.diagnostic << '\n';
  return o.str();
}

}  // namespace tourpart
