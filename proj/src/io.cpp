#include "tourpart/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tourpart {

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

// Splits into lines of whitespace-separated tokens, dropping comments and
// blank lines.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view row = text.substr(pos, end - pos);
    if (auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < row.size()) {
      while (i < row.size() && (row[i] == ' ' || row[i] == '\t' || row[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < row.size() && row[j] != ' ' && row[j] != '\t' && row[j] != '\r') ++j;
      if (j > i) toks.push_back({row.substr(i, j - i), line, static_cast<int>(i) + 1});
      i = j;
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
    pos = end + 1;
  }
  return lines;
}

long long to_int(const Token& t, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(t.text) + "'", t.line, t.column);
  return v;
}

int header_count(const std::vector<Token>& h) {
  if (h[0].text != "n") throw ParseError("expected header 'n <count>'", h[0].line, h[0].column);
  if (h.size() < 2) throw ParseError("missing vertex count", h[0].line, h[0].column + 1);
  const long long n = to_int(h[1], "vertex count");
  if (n < 1 || n > 1'000'000) throw ParseError("vertex count out of range", h[1].line, h[1].column);
  return static_cast<int>(n);
}

std::vector<std::vector<Token>> nonempty(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty input", 1, 1);
  return lines;
}

struct EdgeRecord {
  Vertex u, v;
  int line, column;
};

std::pair<int, std::vector<EdgeRecord>> read_edges(std::string_view text) {
  const auto lines = nonempty(text);
  const auto& h = lines[0];
  const int n = header_count(h);
  if (h.size() > 2) throw ParseError("unexpected token after vertex count", h[2].line, h[2].column);
  std::vector<EdgeRecord> edges;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& row = lines[l];
    if (row.size() != 2)
      throw ParseError("expected 'u v'", row[0].line, row.size() > 2 ? row[2].column : row[0].column);
    Vertex ends[2];
    for (int e = 0; e < 2; ++e) {
      const long long x = to_int(row[e], "vertex id");
      if (x < 0 || x >= n)
        throw ParseError("vertex id " + std::string(row[e].text) + " outside 0.." + std::to_string(n - 1),
                         row[e].line, row[e].column);
      ends[e] = static_cast<Vertex>(x);
    }
    if (ends[0] == ends[1]) throw ParseError("loop", row[0].line, row[0].column);
    edges.push_back({ends[0], ends[1], row[0].line, row[0].column});
  }
  return {n, std::move(edges)};
}

}  // namespace

std::string write_edge_list(const Digraph& g) {
  std::string out = "n " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

Digraph parse_digraph(std::string_view text) {
  auto [n, edges] = read_edges(text);
  Digraph g(n);
  for (const auto& e : edges) {
    if (g.has_edge(e.u, e.v)) throw ParseError("repeated edge", e.line, e.column);
    g.add_edge(e.u, e.v);
  }
  return g;
}

Tournament parse_edge_list(std::string_view text) {
  auto [n, edges] = read_edges(text);
  Digraph g(n);
  for (const auto& e : edges) {
    if (g.has_edge(e.u, e.v)) throw ParseError("repeated edge", e.line, e.column);
    if (g.has_edge(e.v, e.u)) throw ParseError("pair oriented both ways", e.line, e.column);
    g.add_edge(e.u, e.v);
  }
  const std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (g.edge_count() != want) {
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if (!g.has_edge(i, j) && !g.has_edge(j, i))
          throw ParseError("not a tournament: pair " + std::to_string(i) + " " + std::to_string(j) + " has no edge",
                           static_cast<int>(edges.empty() ? 1 : edges.back().line) + 1, 1);
  }
  return Tournament::from_digraph(std::move(g));
}

std::string write_compact(const Tournament& t) {
  const int n = t.size();
  std::string out = "n " + std::to_string(n) + " ";
  out.reserve(out.size() + static_cast<std::size_t>(n) * (n - 1) / 2 + 1);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) out += t.has_edge(i, j) ? '1' : '0';
  out += '\n';
  return out;
}

Tournament parse_compact(std::string_view text) {
  const auto lines = nonempty(text);
  const auto& h = lines[0];
  const int n = header_count(h);
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (lines.size() > 1) throw ParseError("unexpected line after compact header", lines[1][0].line, lines[1][0].column);
  if (h.size() > 3) throw ParseError("unexpected token after bit string", h[3].line, h[3].column);
  const Token bits = h.size() == 3 ? h[2] : Token{"", h[1].line, h[1].column + static_cast<int>(h[1].text.size()) + 1};
  for (std::size_t p = 0; p < bits.text.size(); ++p)
    if (bits.text[p] != '0' && bits.text[p] != '1')
      throw ParseError("bit string may only hold 0 and 1", bits.line, bits.column + static_cast<int>(p));
  if (bits.text.size() != pairs)
    throw ParseError("expected " + std::to_string(pairs) + " bits, got " + std::to_string(bits.text.size()), bits.line,
                     bits.column);
  std::size_t p = 0;
  // build() visits pairs in the same lexicographic order.
  return Tournament::build(n, [&](Vertex, Vertex) { return bits.text[p++] == '1'; });
}

Tournament parse_tournament(std::string_view text) {
  const auto lines = nonempty(text);
  if (lines[0].size() >= 3) return parse_compact(text);
  return parse_edge_list(text);
}

std::string to_dot(const Digraph& g, const VertexSet* highlight) {
  std::ostringstream out;
  out << "digraph T {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    out << "  " << v;
    if (highlight && highlight->contains(v)) out << " [style=filled, fillcolor=lightblue]";
    out << ";\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace tourpart
