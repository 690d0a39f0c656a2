#ifndef GWISH_MONTECARLO_HPP_
#define GWISH_MONTECARLO_HPP_

#include <cstdint>
#include <vector>

#include "gwish/graph.hpp"
#include "gwish/matrix.hpp"

namespace gwish {

struct McConfig {
  long n_samples = 1000;
  std::uint64_t seed = 1;
  int n_replicates = 1;
};

struct McEstimate {
  double log_value = 0.0;  // log C_G(delta, D)
  double se_log = 0.0;     // delta-method standard error of the log
  double ess = 0.0;        // effective sample size of the weights
  bool degenerate = false; // ess < 10
};

// Importance-sampling estimate of C_G(delta, D) in the completion-of-Cholesky
// style: free diagonal entries are chi variates, free off-diagonals standard
// normals, non-free entries completed from the zero constraints, and the
// weight is exp(-1/2 sum of squared completed entries).  Per-sample
// randomness comes from a counter-based stream keyed by (seed, sample index),
// so the estimate is bitwise reproducible regardless of threading.
McEstimate mc_log_constant(const Graph& g, double delta, const SymMatrix& d,
                           const McConfig& cfg);

struct McStudyRow {
  std::uint64_t seed;
  double log_estimate;
  double se;
};

struct McStudy {
  std::vector<McStudyRow> rows;
  double min = 0.0, max = 0.0, sd = 0.0, mean = 0.0;
};

// One row per seed (seed, seed+1, ...), plus summary statistics of the
// per-seed log estimates.
McStudy mc_replicate_study(const Graph& g, double delta, const SymMatrix& d,
                           const McConfig& cfg);

}  // namespace gwish

#endif  // GWISH_MONTECARLO_HPP_
