#ifndef GWISH_IO_HPP_
#define GWISH_IO_HPP_

#include <string>

#include "gwish/graph.hpp"
#include "gwish/matrix.hpp"

namespace gwish {

// Graph input, either JSON {"n": <int>, "edges": [[u,v], ...]} or plain text
// with the vertex count on the first line and one "u v" pair per line.
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);

// Matrix input: CSV (one row per line) or a JSON nested array.  Asymmetry up
// to 1e-12 is averaged away; *warned is set when that happened.
SymMatrix parse_matrix(const std::string& text, bool* warned = nullptr);
SymMatrix load_matrix(const std::string& path, bool* warned = nullptr);

std::string graph_to_json(const Graph& g);

}  // namespace gwish

#endif  // GWISH_IO_HPP_
