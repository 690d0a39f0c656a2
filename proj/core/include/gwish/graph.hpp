#ifndef GWISH_GRAPH_HPP_
#define GWISH_GRAPH_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwish {

// Unordered vertex pair, normalized u < v.
struct Edge {
  int u, v;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator<(const Edge& o) const { return u < o.u || (u == o.u && v < o.v); }
};

// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph grid2(int m);  // 2 x m grid
  static Graph complete_multipartite(const std::vector<int>& parts);
  static Graph complement_of(const Graph& g);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge> non_edges() const;
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;
  // common neighbours of u and v
  std::vector<int> common_neighbors(int u, int v) const;

  // induced subgraph; vertices relabeled to 0..|verts|-1 in the given order
  Graph induced(const std::vector<int>& verts) const;
  Graph relabeled(const std::vector<int>& perm) const;  // new[perm[v]] = old[v]

  std::vector<std::vector<int>> connected_components() const;
  bool is_connected() const;
  bool is_complete() const;
  bool is_clique(const std::vector<int>& verts) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  // canonical form over all vertex permutations; only for small n
  std::vector<Edge> canonical_edges() const;

 private:
  int n_ = 0;
  std::vector<char> adj_;
  std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// Chordality machinery.

struct McsResult {
  std::vector<int> elimination_order;  // order[0] eliminated first
  bool chordal = false;
};

// Maximum cardinality search; the reverse visit order is a perfect
// elimination ordering exactly when the graph is chordal.  Optional tie_rank
// perturbs tie-breaking (used to probe order-invariance); default is lowest
// vertex index.
McsResult mcs_order(const Graph& g, const std::vector<int>* tie_rank = nullptr);

bool is_chordal(const Graph& g);

enum class FillHeuristic { McsFill, GreedyMinFill };

struct ChordalCompletion {
  Graph base;
  std::vector<Edge> fill_edges;
  Graph completed;
  int tau() const { return static_cast<int>(fill_edges.size()); }
};

ChordalCompletion chordal_completion(const Graph& g, FillHeuristic heuristic);

// Exhaustive minimum fill-in over missing-edge subsets in lexicographic
// order.  Only attempted while the subset count stays below a work cap;
// returns nullopt when the search space is too large.
std::optional<ChordalCompletion> minimum_fill_completion(const Graph& g,
                                                         int max_tau = 6);

struct CliqueSequence {
  std::vector<std::vector<int>> cliques;     // perfect sequence C_1..C_m
  std::vector<std::vector<int>> separators;  // S_nu, |cliques|-1 of them
};

// Maximal cliques of a chordal graph arranged in a perfect sequence (built
// from a junction tree); throws NotChordal otherwise.
CliqueSequence clique_sequence(const Graph& g_star,
                               const std::vector<int>* tie_rank = nullptr);

struct PrimeDecomposition {
  std::vector<std::vector<int>> components;  // vertex sets of prime subgraphs
  std::vector<std::vector<int>> separators;  // clique separators, |comp|-1
};

// Clique-minimal-separator decomposition (minimal triangulation via MCS-M,
// then atom extraction along the elimination order).
PrimeDecomposition prime_decomposition(const Graph& g);

bool is_prime(const Graph& g);

// Finest partition of the missing edges into groups that pairwise share no
// vertex, or share exactly one vertex with no completed edge across the two
// groups' private vertices.  Singleton groups are merged only when forced.
std::vector<std::vector<Edge>> partition_missing_edges(const ChordalCompletion& cc);

// Star families of the complement of g restricted to a clique's vertex set:
// the connected components (with >= 2 vertices) of the missing edges inside
// the clique, each required to be a star.  nullopt when some component is
// not a star.
std::optional<std::vector<std::vector<int>>> star_families(
    const Graph& g, const std::vector<int>& clique);

}  // namespace gwish

#endif  // GWISH_GRAPH_HPP_
