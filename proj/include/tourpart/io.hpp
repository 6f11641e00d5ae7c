#pragma once

#include <string>
#include <string_view>

#include "tourpart/core.hpp"

namespace tourpart {

// Edge list: "n <count>", then one "u v" line per edge u -> v.  Blank lines
// and '#' comments are ignored.  Errors carry the line and column.
std::string write_edge_list(const Digraph& g);
inline std::string write_edge_list(const Tournament& t) { return write_edge_list(t.graph()); }
Digraph parse_digraph(std::string_view text);
// Also checks that every pair is oriented exactly once.
Tournament parse_edge_list(std::string_view text);

// Compact: "n <count> <bits>", bit p is 1 iff the p-th pair (i, j), i < j,
// in lexicographic order is oriented i -> j.
std::string write_compact(const Tournament& t);
Tournament parse_compact(std::string_view text);

// Either format, told apart by the header line.
Tournament parse_tournament(std::string_view text);

// Graphviz output.  Vertices of `highlight`, if given, are filled.
std::string to_dot(const Digraph& g, const VertexSet* highlight = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace tourpart
