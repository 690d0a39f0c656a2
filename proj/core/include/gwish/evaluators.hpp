#ifndef GWISH_EVALUATORS_HPP_
#define GWISH_EVALUATORS_HPP_

#include <cstdint>
#include <functional>
#include <string>

#include "gwish/classify.hpp"
#include "gwish/graph.hpp"
#include "gwish/matrix.hpp"

namespace gwish {

// Parameters of the integrals
//   I_G(beta, D) = Int_{S++(G)} det(K)^beta exp(-tr(K D)) dK,   beta > -1
//   C_G(delta, D) = 2^(n delta/2 + |E|) I_G((delta-2)/2, D),    delta > 0.
struct WishartSpec {
  double beta;
  SymMatrix scale;

  static WishartSpec from_beta(double beta, SymMatrix d);
  static WishartSpec from_delta(double delta, SymMatrix d);
  double delta() const { return 2.0 * beta + 2.0; }
};

// Result in log space with the route that produced it.
struct LogValue {
  double log_value = 0.0;
  std::string method;
  double err_log = 0.0;
};

struct EvalOptions {
  double rel_tol = 1e-10;
  bool allow_monte_carlo = true;
  std::uint64_t mc_seed = 1;
  long mc_samples = 100000;
  std::string force_method;  // empty: automatic dispatch
};

// log Gamma_k(beta + (k+1)/2), the clique factor of the chordal product.
double log_clique_factor(int k, double beta);

// I for a complete graph on n vertices with general scale.
double log_I_complete(int n, double beta, const SymMatrix& d);

// Chordal closed form over a perfect clique sequence (clique/separator
// determinant powers and multivariate gamma factors).
LogValue eval_chordal(const CliqueSequence& cs, double beta, const SymMatrix& d);
LogValue eval_chordal_graph(const Graph& g_star, double beta, const SymMatrix& d);

// Factorization over prime components; leaf evaluates each prime subgraph
// (graph, scale submatrix) and the separators contribute complete-graph
// factors.
LogValue eval_prime_factorized(
    const Graph& g, const WishartSpec& spec,
    const std::function<LogValue(const Graph&, const SymMatrix&)>& leaf);

// Closed forms and 1D reductions, all at identity scale.
LogValue eval_fill1_identity(const PatternFillIn1& p, double beta);
LogValue eval_disjoint_fills(const PatternDisjointFills& p, double beta);
LogValue eval_kpartite(const std::vector<int>& parts, double beta);
LogValue eval_fill2_triangle(const PatternTwoFillsTriangle& p, double beta);
LogValue eval_gmk(int m, const std::vector<int>& ks, double beta,
                  double rel_tol = 1e-11);
LogValue eval_starry(const PatternStarry& p, double beta, double rel_tol = 1e-11);
LogValue eval_c6_complement(double beta, double rel_tol = 1e-12);
LogValue eval_triangle_fills(const PatternTriangleFills& p, double beta,
                             double rel_tol = 1e-11);
LogValue eval_gear(int m, double beta, double rel_tol = 1e-10);

// Cycle value I_{C_n}(beta, I_n); closed forms for n <= 5, the fan-completion
// reduction beyond.
LogValue log_I_cycle(int n, double beta, double rel_tol = 1e-10);

// One fill edge, arbitrary positive definite scale: diagonal normalization,
// non-edge zeroing, per-clique Schur data from Cholesky factors, and a
// Student-t compactified one-dimensional complex integral.
LogValue eval_fill1_generalD(const ChordalCompletion& cc, const WishartSpec& spec,
                             double rel_tol = 1e-11);

// Generic route for tau <= 3 at identity scale: complex determinant powers
// of (I + iT) principal submatrices integrated over the fill variables.
LogValue eval_fourier_generic(const ChordalCompletion& cc, double beta,
                              double rel_tol = 1e-8);

// Dispatcher: prime decomposition, per-component classification and the
// cheapest applicable route, with Monte Carlo as a last resort.
LogValue log_constant_I(const Graph& g, const WishartSpec& spec,
                        const EvalOptions& opts = {});
LogValue log_constant_C(const Graph& g, const WishartSpec& spec,
                        const EvalOptions& opts = {});

// log p(Z | G) from the scatter matrix U of N samples.
double log_marginal_likelihood(const SymMatrix& scatter, int n_samples,
                               const Graph& g, double delta, const SymMatrix& d,
                               const EvalOptions& opts = {});

bool is_c6_complement(const Graph& g);

}  // namespace gwish

#endif  // GWISH_EVALUATORS_HPP_
