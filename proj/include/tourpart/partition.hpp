#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tourpart/core.hpp"
#include "tourpart/domination.hpp"

namespace tourpart {

// ------------------------------------------------------------------ colours

enum class Color : std::uint8_t { none = 0, alpha = 1, beta = 2 };

inline Color other(Color c) { return c == Color::alpha ? Color::beta : c == Color::beta ? Color::alpha : Color::none; }
const char* to_string(Color c);

// Partial two-colouring.  Colours are never changed once assigned.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(int n) : color_(n, Color::none), alpha_(n), beta_(n) {}

  int size() const noexcept { return static_cast<int>(color_.size()); }
  Color operator[](Vertex v) const { return color_[v]; }
  bool is_colored(Vertex v) const { return color_[v] != Color::none; }
  // Throws InvariantViolation when v already has a colour.
  void set(Vertex v, Color c);
  const VertexSet& alpha() const noexcept { return alpha_; }
  const VertexSet& beta() const noexcept { return beta_; }
  const VertexSet& of(Color c) const { return c == Color::alpha ? alpha_ : beta_; }
  VertexSet colored() const { return alpha_ | beta_; }
  int count() const { return alpha_.count() + beta_.count(); }

 private:
  std::vector<Color> color_;
  VertexSet alpha_, beta_;
};

// ------------------------------------------------------------------- safety

struct SafetyContext {
  VertexSet d;
  VertexSet e_a;
  VertexSet e_b;
  const Coloring* coloring = nullptr;
  int k = 1;
};

struct SafetyReport {
  bool forwards = false;
  bool backwards = false;
  bool alt_forwards = false;
  bool alt_backwards = false;
  bool safe() const { return forwards && backwards && alt_forwards && alt_backwards; }
};

// Exact evaluation of the four safety predicates for a coloured vertex.
// Throws InvalidArgument for an uncoloured vertex.
SafetyReport is_safe(const Tournament& t, Vertex v, const SafetyContext& ctx);

// The four predicates for every coloured vertex at once.
struct SafetyScan {
  VertexSet forwards, backwards, alt_forwards, alt_backwards;
  VertexSet safe() const { return forwards & backwards & alt_forwards & alt_backwards; }
};
SafetyScan scan_safety(const Tournament& t, const SafetyContext& ctx);

// ------------------------------------------------------------------- params

struct PipelineParams {
  int k = 1;
  int r = 1;                       // structures per class; 6r in total
  int c = 9;                       // size parameter of the dominating structures
  std::int64_t bundle_size = 8;    // m_b, paths per long index
  int short_cap = 20;              // L, length cap for short connector paths
  double claim1_budget = 0;        // B_1
  int growth = 9;                  // g, |Z ∪ Z'| <= g |Z|
  std::array<int, 9> segments{};   // |Q^1| .. |Q^9|; entry 4 (Q^5) is the remainder and unused
  std::uint64_t linkage_budget = 2'000'000;

  static PipelineParams paper(int k);
  static PipelineParams relaxed(int k, int n);

  bool theorem_backed() const;  // every constant at its paper value
  void validate() const;        // throws InvalidArgument
  std::string to_text() const;  // key=value lines, round-trips through parse_params
  std::string fingerprint() const;
};

// Overrides fields of `base` from key=value lines; '#' starts a comment.
// Unknown keys and malformed values throw ParseError.
PipelineParams parse_params(std::string_view text, PipelineParams base);

int paper_c(int k);
double paper_min_degree(int k);  // 10^9 k^6 log2(2k)

struct Feasibility {
  bool ok = true;
  std::string reason;
};
Feasibility pipeline_feasibility(const Tournament& t, const PipelineParams& p);

// -------------------------------------------------------------------- state

struct StageAudit {
  std::string stage;
  std::string check;
  bool passed = true;
  bool theorem_backed = false;  // the bound checked is the paper's, not a relaxed one
  std::string detail;
};

// Six classes of r indices each, in order: alpha-monochromatic,
// beta-monochromatic, alpha-alpha, beta-beta, alpha-beta, beta-alpha.
enum class IndexClass { alpha_mono, beta_mono, alpha_alpha, beta_beta, alpha_beta, beta_alpha };

struct PipelineState {
  Tournament host;        // T, or reverse(T) after normalisation
  bool reversed = false;
  PipelineParams params;
  int k = 1;

  std::vector<Vertex> x, y;  // x_1..x_{6r}, y_1..y_{6r}
  int delta_in_hat = 0;
  int delta_out_hat = 0;
  int c = 2;

  std::vector<DominatingStructure> a, b;  // A_i (out mode, sink x_i), B_i (in mode, source y_i)
  VertexSet d, d1, d2, e_a, e_b;

  Coloring coloring;
  VertexSet c1, c2, c3, c4, c0;

  std::vector<int> short_correct, long_indices;
  VertexSet v_short_correct, v_short_incorrect;
  std::vector<std::optional<DiPath>> connectors;      // P_i
  std::vector<std::vector<DiPath>> bundles;           // Q_{i,j}, empty for short indices
  VertexSet v_long, v0_long, vbar_long;
  std::set<std::pair<int, int>> i_r_alpha, i_r_beta;
  VertexSet r_alpha, r_beta, r46;
  std::vector<std::array<int, 3>> splice;             // j_{i,1..3}, -1 when unused
  VertexSet z_a, z_b;

  VertexSet safe_snapshot;  // safe vertices at the previous audit
  std::vector<StageAudit> audits;

  int indices() const { return static_cast<int>(a.size()); }
  IndexClass index_class(int i) const { return static_cast<IndexClass>(i / params.r); }
  Vertex source_a(int i) const { return a[i].extremal; }  // a_i
  Vertex sink_b(int i) const { return b[i].extremal; }    // b_i
  VertexSet e() const { return e_a | e_b; }
  SafetyContext safety() const;
};

// Parity the connector P_i must have, if any.
std::optional<bool> connector_even(IndexClass c);

struct ExtremalSets {
  std::vector<Vertex> x, y;
  int delta_in_hat = 0;
  int delta_out_hat = 0;
};
// X: 6*count vertices of least in-degree; Y: 6*count vertices of least
// out-degree outside X; lowest ids on ties.  Throws InvalidArgument when
// |T| < 12*count.
ExtremalSets select_extremal_sets(const Tournament& t, int count);

// Extremal sets, dominating family, the |E_A| <= |E_B| normalisation and
// the D1/D2 colouring.
PipelineState build_dominating_family(const Tournament& t, const PipelineParams& params);

// Claim-1 extension: colours new neighbours of Z (outside N) until every
// vertex of Z ∪ Z' is safe; returns Z'.  Z ∖ C must already be coloured.
VertexSet extend_coloring_safely(PipelineState& s, const VertexSet& z, const VertexSet& n, const std::string& stage);

VertexSet bootstrap_safety(PipelineState& s);   // returns C_1
void find_connector_paths(PipelineState& s);    // Claim 3; fills C_4 and C^0
void finalize_coloring(PipelineState& s);       // Claim 4

// ------------------------------------------------------------------ results

enum class PartitionMode { pipeline, search, automatic };
const char* to_string(PartitionMode m);

struct PartitionResult {
  VertexSet v1, v2;
  PartitionMode mode = PartitionMode::search;
  bool verified = false;
  std::array<int, 3> connectivity{};  // T[V1], T[V2], T[V1,V2]
  bool connectivity_exact = false;    // otherwise each value is min(kappa, k)
  std::string params_fingerprint;
  std::string diagnostic;             // why nothing was verified, or why auto fell back
  std::vector<StageAudit> audits;
};

// Throws InvalidArgument unless v1, v2 split V(T) into two nonempty parts.
PartitionResult verify_partition(const Tournament& t, const VertexSet& v1, const VertexSet& v2, int k,
                                 int exact_limit = 256);

struct SearchOptions {
  std::uint64_t seed = 1;
  int restarts = 24;
  int steps_per_restart = 0;  // 0: 4n
  int threads = 1;
};
// Randomised local search; result.verified is false when nothing was found.
PartitionResult search_partition(const Tournament& t, int k, const SearchOptions& options = {});

// Full pipeline on a single tournament; throws StageError on the first
// stage that cannot complete.
PartitionResult run_pipeline(const Tournament& t, const PipelineParams& params, PipelineState* keep = nullptr);

PartitionResult partition(const Tournament& t, int k, PartitionMode mode, const PipelineParams& params,
                          const SearchOptions& options = {});

// "V1: ..." / "V2: ..." lines plus the verification block.
std::string format_partition(const PartitionResult& r);

}  // namespace tourpart
