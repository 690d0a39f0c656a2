#ifndef GWISH_CLASSIFY_HPP_
#define GWISH_CLASSIFY_HPP_

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "gwish/graph.hpp"

namespace gwish {

// Solvable-class tags for a graph (with a chordal completion), in dispatch
// priority order.  Each variant carries the witness data its evaluator needs;
// witnesses are recomputable from the adjacency.

struct PatternChordal {
  ChordalCompletion cc;  // zero fill edges
};

struct PatternFillIn1 {
  ChordalCompletion cc;  // one fill edge
  int w;                 // common neighbours of the fill endpoints
};

struct PatternDisjointFills {
  ChordalCompletion cc;
  std::vector<int> w_e;  // per fill edge, aligned with cc.fill_edges
};

// Two fill edges {end1,apex}, {end2,apex} closing a triangle over the base
// edge {end1,end2} of the graph.
struct PatternTwoFillsTriangle {
  ChordalCompletion cc;
  int apex, end1, end2;
  int w;   // common neighbours of end1,end2
  int w1;  // |common(end1,apex) U common(end1,end2)|
  int w2;  // |common(end2,apex) U common(end1,end2)|
};

struct PatternKPartite {
  std::vector<int> parts;  // descending
};

struct PatternTuran {
  int pairs;  // number of size-2 parts; 2*pairs vertices
};

// The hub-and-satellites family: an m-clique with anchor v0 detached from
// ell of its clique mates, each of which carries a private k_mu-clique of
// satellites attached to both v0 and that mate.
struct PatternGmk {
  int m;
  std::vector<int> ks;
  std::vector<int> to_canonical;  // vertex relabel onto the reference layout
};

struct PatternStarry {
  ChordalCompletion cc;
};

// Three fill edges forming a triangle; the exponents come from splitting the
// clique sequence by which fill edges each clique contains.
struct PatternTriangleFills {
  ChordalCompletion cc;
  std::array<int, 3> tri;  // triangle vertices
  int gamma;               // from cliques containing all three fills
  std::array<int, 3> gamma_edge;  // per single fill edge
};

struct PatternGear {
  int m;                          // 2m+1 vertices
  std::vector<int> to_canonical;  // relabel onto the reference gear layout
};

struct PatternGeneralSmallTau {
  ChordalCompletion cc;  // tau <= 3
};

struct PatternIntractable {};

using FillPattern =
    std::variant<PatternChordal, PatternFillIn1, PatternDisjointFills,
                 PatternTwoFillsTriangle, PatternKPartite, PatternTuran,
                 PatternGmk, PatternStarry, PatternTriangleFills, PatternGear,
                 PatternGeneralSmallTau, PatternIntractable>;

std::string pattern_name(const FillPattern& p);

// Classification of a fixed completion.
FillPattern classify(const ChordalCompletion& cc);

// Classification over candidate completions (greedy min-fill, mcs fill and
// the exact minimum when the search is affordable); keeps the
// highest-priority class any candidate reaches.
FillPattern classify_graph(const Graph& g);

// Reference layouts used by the recognizers and evaluators.
Graph gmk_graph(int m, const std::vector<int>& ks);
ChordalCompletion gmk_completion(int m, const std::vector<int>& ks);
Graph gear_graph(int m);
ChordalCompletion gear_completion(int m);

// nullopt-style recognizers (exposed for tests)
bool recognize_kpartite(const Graph& g, std::vector<int>* parts);
bool recognize_gmk(const Graph& g, PatternGmk* out);
bool recognize_gear(const Graph& g, PatternGear* out);

}  // namespace gwish

#endif  // GWISH_CLASSIFY_HPP_
