// Command-line front end.  Talks to the library only through tourpart.h.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tourpart/tourpart.h"

namespace {

// Exit-code contract.
constexpr int kSuccess = 0;
constexpr int kNotFound = 1;
constexpr int kBudget = 2;
constexpr int kInput = 3;
constexpr int kInternal = 4;

int exit_code(tp_status s) {
  switch (s) {
    case TP_OK: return kSuccess;
    case TP_NOT_FOUND:
    case TP_PRECONDITION:
    case TP_STAGE_ERROR: return kNotFound;
    case TP_BUDGET: return kBudget;
    case TP_INVALID_ARGUMENT:
    case TP_PARSE_ERROR:
    case TP_IO_ERROR: return kInput;
    default: return kInternal;
  }
}

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void raise(tp_status s) { throw Failure{exit_code(s), std::string(tp_status_name(s)) + ": " + tp_last_error()}; }
[[noreturn]] void input_error(const std::string& msg) { throw Failure{kInput, msg}; }

void check(tp_status s) {
  if (s != TP_OK) raise(s);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TournamentPtr = std::unique_ptr<tp_tournament, Deleter<tp_tournament, tp_tournament_free>>;
using DigraphPtr = std::unique_ptr<tp_digraph, Deleter<tp_digraph, tp_digraph_free>>;
using ParamsPtr = std::unique_ptr<tp_params, Deleter<tp_params, tp_params_free>>;
using PathsPtr = std::unique_ptr<tp_paths, Deleter<tp_paths, tp_paths_free>>;
using PartitionPtr = std::unique_ptr<tp_partition, Deleter<tp_partition, tp_partition_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  tp_string_free(s);
  return out;
}

TournamentPtr load(const std::string& path) {
  tp_tournament* t = nullptr;
  tp_status s;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    const std::string text = ss.str();
    s = tp_tournament_parse(text.data(), text.size(), &t);
  } else {
    s = tp_tournament_load(path.c_str(), &t);
  }
  check(s);
  return TournamentPtr(t);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{kInput, "cannot write " + path};
}

std::string join(const int* v, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  input_error("malformed " + what + " '" + s + "'");
}

std::vector<int> parse_ids(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_int(item, "vertex id"));
  return out;
}

// "a:b" pairs separated by commas or given as separate arguments.
std::vector<std::pair<int, int>> parse_pairs(const std::vector<std::string>& args) {
  std::vector<std::pair<int, int>> out;
  for (const auto& arg : args) {
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto colon = item.find(':');
      if (colon == std::string::npos) input_error("expected 'a:b', got '" + item + "'");
      out.push_back({parse_int(item.substr(0, colon), "id"), parse_int(item.substr(colon + 1), "id")});
    }
  }
  return out;
}

tp_format parse_format(const std::string& f) {
  if (f == "edges") return TP_FORMAT_EDGE_LIST;
  if (f == "compact") return TP_FORMAT_COMPACT;
  if (f == "dot") return TP_FORMAT_DOT;
  input_error("unknown format '" + f + "'");
}

struct InstanceSpec {
  std::string kind = "random";
  int n = 0;
  int q = 0;
  int layers = 0;
  int width = 0;
};

TournamentPtr generate(const InstanceSpec& spec, std::optional<std::uint64_t> seed) {
  tp_tournament* t = nullptr;
  const bool randomized = spec.kind == "random" || spec.kind == "layered";
  if (randomized && !seed) input_error("--seed is required for kind " + spec.kind);
  if (spec.kind == "random") {
    check(tp_tournament_random(spec.n, *seed, &t));
  } else if (spec.kind == "paley") {
    check(tp_tournament_paley(spec.q ? spec.q : spec.n, &t));
  } else if (spec.kind == "transitive") {
    check(tp_tournament_transitive(spec.n, &t));
  } else if (spec.kind == "layered") {
    check(tp_tournament_layered(spec.layers, spec.width, *seed, &t));
  } else {
    input_error("unknown kind '" + spec.kind + "'");
  }
  return TournamentPtr(t);
}

// ------------------------------------------------------------------ gen

struct GenOptions {
  InstanceSpec spec;
  std::optional<std::uint64_t> seed;
  std::string format = "edges";
  std::string out;
};

int cmd_gen(const GenOptions& o) {
  TournamentPtr t = generate(o.spec, o.seed);
  char* text = nullptr;
  check(tp_tournament_format(t.get(), parse_format(o.format), &text));
  write_output(o.out, take(text));
  return kSuccess;
}

// -------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::string in;
  int linked = 0;
  std::uint64_t budget = 5'000'000;
};

int cmd_analyze(const AnalyzeOptions& o) {
  TournamentPtr t = load(o.in);
  const int n = tp_tournament_size(t.get());
  int min_in = n, max_in = 0, min_out = n, max_out = 0;
  for (int v = 0; v < n; ++v) {
    int din = 0, dout = 0;
    check(tp_tournament_degrees(t.get(), v, &din, &dout));
    min_in = std::min(min_in, din);
    max_in = std::max(max_in, din);
    min_out = std::min(min_out, dout);
    max_out = std::max(max_out, dout);
  }
  int kappa = 0;
  check(tp_vertex_connectivity(t.get(), -1, &kappa));
  std::cout << "n: " << n << "\n"
            << "edges: " << static_cast<long long>(n) * (n - 1) / 2 << "\n"
            << "in-degree: min " << min_in << " max " << max_in << "\n"
            << "out-degree: min " << min_out << " max " << max_out << "\n"
            << "min semidegree: " << std::min(min_in, min_out) << "\n"
            << "connectivity: " << kappa << "\n";
  for (int k = 1; k <= kappa + 1; ++k) {
    int yes = 0;
    check(tp_is_strongly_k_connected(t.get(), k, &yes));
    std::cout << "strongly " << k << "-connected: " << (yes ? "true" : "false") << "\n";
  }
  if (o.linked > 0) {
    tp_verdict v;
    check(tp_is_k_linked(t.get(), o.linked, o.budget, &v));
    const char* word = v == TP_VERDICT_YES ? "true" : v == TP_VERDICT_NO ? "false" : "unknown";
    std::cout << o.linked << "-linked: " << word << "\n";
    if (v == TP_VERDICT_UNKNOWN) return kBudget;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- carve

struct CarveOptions {
  std::string in;
  int x = -1, y = -1;
  std::string avoid;
  int k = 1;
  bool keep_endpoints = false;
  std::string remainder_out;
};

void print_remainder(const tp_paths* p, int k) {
  const std::size_t r = tp_paths_remainder_size(p);
  std::cout << "remainder: " << r << " vertices\n";
  std::cout << "status: " << (tp_paths_guaranteed(p) ? "theorem-backed" : "best-effort") << "\n";
  std::cout << "strongly " << k << "-connected: " << (tp_paths_remainder_connectivity(p) >= k ? "true" : "false")
            << "\n";
}

int cmd_carve(const CarveOptions& o) {
  TournamentPtr t = load(o.in);
  const std::vector<int> avoid = parse_ids(o.avoid);
  tp_paths* raw = nullptr;
  const tp_status s = tp_carve(t.get(), o.x, o.y, avoid.data(), avoid.size(), o.k, o.keep_endpoints,
                               o.keep_endpoints, &raw);
  if (s == TP_NOT_FOUND) {
    std::cout << "no path: " << tp_last_error() << "\n";
    return kNotFound;
  }
  check(s);
  PathsPtr p(raw);
  std::cout << "path: " << join(tp_paths_vertices(p.get(), 0), tp_paths_length(p.get(), 0)) << "\n";
  print_remainder(p.get(), o.k);
  if (!o.remainder_out.empty()) {
    // Induced subtournament on the remainder, written with original ids
    // listed in a comment so the file stays loadable.
    const int* ids = tp_paths_remainder(p.get());
    const std::size_t m = tp_paths_remainder_size(p.get());
    std::string text = "# vertices: " + join(ids, m) + "\nn " + std::to_string(m) + "\n";
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && tp_tournament_has_edge(t.get(), ids[i], ids[j]))
          text += std::to_string(i) + " " + std::to_string(j) + "\n";
    write_output(o.remainder_out, text);
  }
  return kSuccess;
}

// ----------------------------------------------------------------- link

struct LinkOptions {
  std::string in;
  std::vector<std::string> pairs;
  bool spanning = false;
  std::uint64_t budget = 5'000'000;
};

int cmd_link(const LinkOptions& o) {
  TournamentPtr t = load(o.in);
  const auto pairs = parse_pairs(o.pairs);
  if (pairs.empty()) input_error("at least one --pair is required");
  std::vector<int> flat;
  for (auto [a, b] : pairs) {
    flat.push_back(a);
    flat.push_back(b);
  }
  tp_paths* raw = nullptr;
  const tp_status s = tp_link(t.get(), flat.data(), pairs.size(), o.spanning, o.budget, &raw);
  if (s != TP_OK && s != TP_NOT_FOUND && s != TP_BUDGET) raise(s);
  PathsPtr p(raw);
  if (!p) {
    std::cout << "status: " << tp_last_error() << "\n";
    return exit_code(s);
  }
  const int n = tp_tournament_size(t.get());
  std::vector<int> seen(n, 0);
  bool disjoint = true, ends = true;
  for (std::size_t i = 0; i < tp_paths_count(p.get()); ++i) {
    const int* v = tp_paths_vertices(p.get(), i);
    const std::size_t len = tp_paths_length(p.get(), i);
    std::cout << "path " << i << ": " << join(v, len) << "\n";
    ends = ends && len >= 2 && v[0] == pairs[i].first && v[len - 1] == pairs[i].second;
    for (std::size_t j = 0; j < len; ++j) {
      if (seen[v[j]]) disjoint = false;
      seen[v[j]] = 1;
    }
  }
  const int covered = static_cast<int>(std::count(seen.begin(), seen.end(), 1));
  std::cout << "status: " << tp_paths_status(p.get()) << "\n";
  if (o.spanning) std::cout << "guarantee: " << (tp_paths_guaranteed(p.get()) ? "theorem-backed" : "best-effort") << "\n";
  if (s == TP_OK) {
    std::cout << "coverage: " << covered << "/" << n << " vertices\n"
              << "disjoint: " << (disjoint ? "true" : "false") << "\n"
              << "endpoints: " << (ends ? "exact" : "wrong") << "\n";
    if (!disjoint || !ends || (o.spanning && covered != n)) throw Failure{kInternal, "linkage audit failed"};
  }
  return exit_code(s);
}

// ------------------------------------------------------------ subdivide

struct SubdivideOptions {
  std::string in;
  std::string h;
  std::vector<std::string> phi;
  int k = 1;
};

int cmd_subdivide(const SubdivideOptions& o) {
  TournamentPtr t = load(o.in);
  tp_digraph* hraw = nullptr;
  check(tp_digraph_load(o.h.c_str(), &hraw));
  DigraphPtr h(hraw);
  const int d = tp_digraph_size(h.get());
  std::vector<int> phi(d, -1);
  for (auto [a, b] : parse_pairs(o.phi)) {
    if (a < 0 || a >= d) input_error("phi names H-vertex " + std::to_string(a) + " outside 0.." + std::to_string(d - 1));
    if (phi[a] >= 0) input_error("phi maps H-vertex " + std::to_string(a) + " twice");
    phi[a] = b;
  }
  for (int i = 0; i < d; ++i)
    if (phi[i] < 0) input_error("phi does not map H-vertex " + std::to_string(i));
  tp_paths* raw = nullptr;
  const tp_status s = tp_subdivide(t.get(), h.get(), phi.data(), phi.size(), o.k, &raw);
  if (s == TP_NOT_FOUND) {
    std::cout << "no subdivision: " << tp_last_error() << "\n";
    return kNotFound;
  }
  check(s);
  PathsPtr p(raw);
  for (std::size_t i = 0; i < tp_paths_count(p.get()); ++i) {
    int a = 0, b = 0;
    tp_paths_edge(p.get(), i, &a, &b);
    std::cout << "edge " << a << "->" << b << ": " << join(tp_paths_vertices(p.get(), i), tp_paths_length(p.get(), i))
              << "\n";
  }
  print_remainder(p.get(), o.k);
  return kSuccess;
}

// ------------------------------------------------------------ partition

struct PartitionOptions {
  std::string in;
  int k = 1;
  std::string mode = "auto";
  std::optional<std::uint64_t> seed;
  std::string params = "relaxed";
  std::string params_file;
  int restarts = 0;
  int threads = 1;
  std::string out;
  bool audits = false;
};

tp_mode parse_mode(const std::string& m) {
  if (m == "pipeline") return TP_MODE_PIPELINE;
  if (m == "search") return TP_MODE_SEARCH;
  if (m == "auto") return TP_MODE_AUTO;
  input_error("unknown mode '" + m + "'");
}

ParamsPtr make_params(const std::string& base, const std::string& file, int k, int n) {
  tp_params* p = nullptr;
  if (base == "paper")
    check(tp_params_paper(k, &p));
  else if (base == "relaxed")
    check(tp_params_relaxed(k, n, &p));
  else
    input_error("unknown parameter set '" + base + "'");
  ParamsPtr out(p);
  if (!file.empty()) {
    tp_params* q = nullptr;
    check(tp_params_load(file.c_str(), out.get(), &q));
    out.reset(q);
  }
  return out;
}

int cmd_partition(const PartitionOptions& o) {
  const tp_mode mode = parse_mode(o.mode);
  if (mode != TP_MODE_PIPELINE && !o.seed) input_error("--seed is required for modes search and auto");
  TournamentPtr t = load(o.in);
  ParamsPtr params = make_params(o.params, o.params_file, o.k, tp_tournament_size(t.get()));
  tp_search_options so = tp_search_options_default();
  if (o.seed) so.seed = *o.seed;
  if (o.restarts > 0) so.restarts = o.restarts;
  so.threads = o.threads;
  tp_partition* raw = nullptr;
  const tp_status s = tp_partition_run(t.get(), o.k, mode, params.get(), &so, &raw);
  if (!raw) {
    std::cout << "verified: false\nmode: " << o.mode << "\ndiagnostic: " << tp_last_error() << "\n";
    return exit_code(s);
  }
  PartitionPtr p(raw);
  char* text = nullptr;
  check(tp_partition_format(p.get(), &text));
  const std::string body = take(text);
  std::cout << body;
  if (o.audits) {
    for (std::size_t i = 0; i < tp_partition_audit_count(p.get()); ++i) {
      const char *stage, *chk, *detail;
      int passed, backed;
      check(tp_partition_audit(p.get(), i, &stage, &chk, &passed, &backed, &detail));
      std::cout << "audit " << stage << " | " << chk << " | " << (passed ? "pass" : "FAIL")
                << (backed ? " | paper bound" : "") << (*detail ? std::string(" | ") + detail : "") << "\n";
    }
  }
  if (!o.out.empty()) write_output(o.out, body);
  return exit_code(s);
}

// ----------------------------------------------------------- experiment

struct ExperimentOptions {
  std::string config;
  std::string out;
  int threads = 0;
};

struct Trial {
  InstanceSpec spec;
  int k = 1;
  std::uint64_t seed = 0;
};

struct Row {
  std::string instance;
  int n = 0;
  int k = 0;
  std::string mode;
  bool success = false;
  int kappa[3] = {0, 0, 0};
  double wall_ms = 0;
  std::uint64_t seed = 0;
  std::string fingerprint;
  std::string note;
};

const char* kHeader = "instance,n,k,mode,success,kappa_v1,kappa_v2,kappa_v1v2,wall_ms,seed,params_fingerprint";

template <class T>
std::vector<T> list_of(const nlohmann::json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

int cmd_experiment(const ExperimentOptions& o) {
  nlohmann::json cfg;
  try {
    std::ifstream in(o.config);
    if (!in) input_error("cannot open " + o.config);
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    input_error(std::string("config: ") + e.what());
  }
  std::vector<Trial> trials;
  std::string mode_name;
  int restarts = 0, threads = 1;
  std::string params_base, params_file;
  try {
    static const std::set<std::string> known{"kinds", "n", "k", "seeds", "mode", "restarts", "threads",
                                             "params", "params_file", "layers", "width", "q"};
    for (const auto& [key, _] : cfg.items())
      if (!known.count(key)) input_error("config: unknown key '" + key + "'");
    const auto kinds = list_of<std::string>(cfg, "kinds", {"random"});
    const auto ns = list_of<int>(cfg, "n", {});
    const auto ks = list_of<int>(cfg, "k", {1});
    std::vector<std::uint64_t> seeds;
    if (cfg.contains("seeds") && cfg["seeds"].is_object()) {
      const auto from = cfg["seeds"].value("from", std::uint64_t{1});
      const auto count = cfg["seeds"].value("count", std::uint64_t{0});
      for (std::uint64_t s = 0; s < count; ++s) seeds.push_back(from + s);
    } else {
      seeds = list_of<std::uint64_t>(cfg, "seeds", {});
    }
    mode_name = cfg.value("mode", std::string("search"));
    parse_mode(mode_name);
    restarts = cfg.value("restarts", 0);
    threads = o.threads > 0 ? o.threads : cfg.value("threads", 1);
    params_base = cfg.value("params", std::string("relaxed"));
    params_file = cfg.value("params_file", std::string());
    const int layers = cfg.value("layers", 0), width = cfg.value("width", 0);
    for (const auto& kind : kinds)
      for (int n : (kind == "layered" ? std::vector<int>{layers * width} : ns))
        for (int k : ks)
          for (std::uint64_t seed : seeds) {
            Trial tr;
            tr.spec.kind = kind;
            tr.spec.n = n;
            tr.spec.q = kind == "paley" ? n : 0;
            tr.spec.layers = layers;
            tr.spec.width = width;
            tr.k = k;
            tr.seed = seed;
            trials.push_back(tr);
          }
  } catch (const nlohmann::json::exception& e) {
    input_error(std::string("config: ") + e.what());
  }
  if (threads < 1) input_error("threads must be positive");

  const tp_mode mode = parse_mode(mode_name);
  std::vector<Row> rows(trials.size());
  std::vector<std::optional<Failure>> errors(trials.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < trials.size();) {
      const Trial& tr = trials[i];
      Row& row = rows[i];
      row.instance = tr.spec.kind + ":n=" + std::to_string(tr.spec.n) + ":seed=" + std::to_string(tr.seed);
      row.n = tr.spec.n;
      row.k = tr.k;
      row.mode = mode_name;
      row.seed = tr.seed;
      try {
        TournamentPtr t = generate(tr.spec, tr.seed);
        ParamsPtr params = make_params(params_base, params_file, tr.k, tp_tournament_size(t.get()));
        row.fingerprint = tp_params_fingerprint(params.get());
        tp_search_options so = tp_search_options_default();
        so.seed = tr.seed;
        if (restarts > 0) so.restarts = restarts;
        so.threads = 1;
        const auto start = std::chrono::steady_clock::now();
        tp_partition* raw = nullptr;
        const tp_status s = tp_partition_run(t.get(), tr.k, mode, params.get(), &so, &raw);
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        PartitionPtr p(raw);
        if (s != TP_OK && s != TP_NOT_FOUND && s != TP_STAGE_ERROR && s != TP_PRECONDITION) raise(s);
        if (p) {
          row.success = s == TP_OK && tp_partition_verified(p.get());
          tp_partition_connectivity(p.get(), row.kappa, nullptr);
        }
      } catch (const Failure& f) {
        errors[i] = f;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::min<int>(threads, static_cast<int>(trials.size())); ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) throw *e;

  std::ostringstream csv;
  csv << kHeader << "\n";
  int ok = 0;
  std::vector<double> times;
  for (const Row& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    csv << r.instance << "," << r.n << "," << r.k << "," << r.mode << "," << (r.success ? 1 : 0) << "," << r.kappa[0]
        << "," << r.kappa[1] << "," << r.kappa[2] << "," << wall << "," << r.seed << "," << r.fingerprint << "\n";
    ok += r.success;
    times.push_back(r.wall_ms);
  }
  if (!rows.empty()) {
    std::sort(times.begin(), times.end());
    char line[160];
    std::snprintf(line, sizeof line, "# summary: %d/%zu verified (%.1f%%), median wall %.3f ms\n", ok, rows.size(),
                  100.0 * ok / rows.size(), times[times.size() / 2]);
    csv << line;
  }
  write_output(o.out, csv.str());
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strongly connected tournament partitioning toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tp_version());

  GenOptions gen;
  std::uint64_t gen_seed = 0;
  auto* g = app.add_subcommand("gen", "Generate a tournament");
  g->add_option("--kind", gen.spec.kind, "random, paley, transitive or layered")->required();
  g->add_option("--n", gen.spec.n, "Number of vertices");
  g->add_option("--q", gen.spec.q, "Paley modulus");
  g->add_option("--layers", gen.spec.layers, "Blocks of a layered tournament");
  g->add_option("--width", gen.spec.width, "Block size of a layered tournament");
  auto* gen_seed_opt = g->add_option("--seed", gen_seed, "Generator seed");
  g->add_option("--format", gen.format, "edges, compact or dot");
  g->add_option("-o,--out", gen.out, "Output file (default stdout)");

  AnalyzeOptions an;
  auto* a = app.add_subcommand("analyze", "Degrees and connectivity of a tournament");
  a->add_option("input", an.in, "Tournament file, '-' for stdin")->required();
  a->add_option("--linked", an.linked, "Also decide k-linkedness exhaustively");
  a->add_option("--budget", an.budget, "Node budget for the linkedness search");

  CarveOptions ca;
  auto* c = app.add_subcommand("carve", "Delete a shortest path and certify the remainder");
  c->add_option("input", ca.in, "Tournament file")->required();
  c->add_option("--x", ca.x, "Path start")->required();
  c->add_option("--y", ca.y, "Path end")->required();
  c->add_option("--avoid", ca.avoid, "Comma-separated vertices the path must avoid");
  c->add_option("--k", ca.k, "Connectivity to certify in the remainder");
  c->add_flag("--keep-endpoints", ca.keep_endpoints, "Keep x and y in the remainder");
  c->add_option("--remainder", ca.remainder_out, "Write the remainder tournament here");

  LinkOptions li;
  auto* l = app.add_subcommand("link", "Vertex-disjoint paths between prescribed pairs");
  l->add_option("input", li.in, "Tournament file")->required();
  l->add_option("--pair", li.pairs, "Pair x:y (repeatable, or comma-separated)")->required();
  l->add_flag("--spanning", li.spanning, "Paths must cover every vertex");
  l->add_option("--budget", li.budget, "Search node budget");

  SubdivideOptions su;
  auto* s = app.add_subcommand("subdivide", "Subdivision of H with a strongly connected remainder");
  s->add_option("input", su.in, "Tournament file")->required();
  s->add_option("--H", su.h, "Edge-list file of H")->required();
  s->add_option("--phi", su.phi, "Branch vertices h:v (repeatable, or comma-separated)")->required();
  s->add_option("--k", su.k, "Connectivity to certify in the remainder");

  PartitionOptions pa;
  std::uint64_t pa_seed = 0;
  auto* p = app.add_subcommand("partition", "Split into two strongly k-connected halves");
  p->add_option("input", pa.in, "Tournament file")->required();
  p->add_option("--k", pa.k, "Target connectivity")->required();
  p->add_option("--mode", pa.mode, "pipeline, search or auto");
  auto* pa_seed_opt = p->add_option("--seed", pa_seed, "Search seed");
  p->add_option("--params", pa.params, "Base parameter set: relaxed or paper");
  p->add_option("--params-file", pa.params_file, "key=value overrides");
  p->add_option("--restarts", pa.restarts, "Search restarts");
  p->add_option("--threads", pa.threads, "Search threads");
  p->add_option("-o,--out", pa.out, "Also write the partition here");
  p->add_flag("--audits", pa.audits, "Print the pipeline stage audits");

  ExperimentOptions ex;
  auto* e = app.add_subcommand("experiment", "Run a grid of partition trials and emit CSV");
  e->add_option("config", ex.config, "JSON grid description")->required();
  e->add_option("-o,--out", ex.out, "CSV output (default stdout)");
  e->add_option("--threads", ex.threads, "Concurrent trials (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kInput;
  }

  try {
    if (*g) {
      if (*gen_seed_opt) gen.seed = gen_seed;
      return cmd_gen(gen);
    }
    if (*a) return cmd_analyze(an);
    if (*c) return cmd_carve(ca);
    if (*l) return cmd_link(li);
    if (*s) return cmd_subdivide(su);
    if (*p) {
      if (*pa_seed_opt) pa.seed = pa_seed;
      return cmd_partition(pa);
    }
    if (*e) return cmd_experiment(ex);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kInput;
}
