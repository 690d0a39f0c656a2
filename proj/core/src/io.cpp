#include "gwish/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gwish/errors.hpp"

namespace gwish {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  if (looks_like_json(text)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("graph JSON: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw ParseError("graph JSON: missing integer field \"n\"");
    int n = j["n"].get<int>();
    if (n < 0) throw ParseError("graph JSON: negative vertex count");
    Graph g(n);
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("graph JSON: edges must be [u,v] pairs");
      int u = e[0].get<int>(), v = e[1].get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw ParseError("graph JSON: edge endpoint out of range");
      g.add_edge(u, v);
    }
    return g;
  }
  std::istringstream in(text);
  int n;
  if (!(in >> n) || n < 0) throw ParseError("graph text: bad vertex count line");
  Graph g(n);
  int u, v;
  while (in >> u >> v) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError("graph text: edge endpoint out of range");
    g.add_edge(u, v);
  }
  if (!in.eof() && in.fail()) {
    in.clear();
    std::string rest;
    in >> rest;
    if (!rest.empty()) throw ParseError("graph text: trailing junk: " + rest);
  }
  return g;
}

Graph load_graph(const std::string& path) { return parse_graph(slurp(path)); }

SymMatrix parse_matrix(const std::string& text, bool* warned) {
  std::vector<std::vector<double>> rows;
  if (looks_like_json(text)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("matrix JSON: expected nested arrays");
    for (const auto& r : j) {
      std::vector<double> row;
      for (const auto& x : r) row.push_back(x.get<double>());
      rows.push_back(std::move(row));
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      std::vector<double> row;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) {
        try {
          row.push_back(std::stod(cell));
        } catch (...) {
          throw ParseError("matrix CSV: bad number: " + cell);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError("matrix: no rows");
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw ParseError("matrix: not square");
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  double asym = m.max_asymmetry();
  if (asym > 1e-12) throw ParseError("matrix: asymmetric beyond 1e-12");
  if (warned) *warned = asym > 0.0;
  m.symmetrize();
  return m;
}

SymMatrix load_matrix(const std::string& path, bool* warned) {
  return parse_matrix(slurp(path), warned);
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.num_vertices();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = edges;
  return j.dump();
}

}  // namespace gwish
