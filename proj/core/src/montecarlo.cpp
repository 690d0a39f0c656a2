#include "gwish/montecarlo.hpp"

#include <cmath>

#include "gwish/errors.hpp"
#include "gwish/special.hpp"

namespace gwish {

namespace {

constexpr double kLog2Pi = 1.83787706640934548356065947281123527;
constexpr double kLog2 = 0.69314718055994530941723212145817657;

// Counter-based stream: a SplitMix64 walk whose initial state mixes the seed
// with the sample index, so sample s of seed k is the same no matter which
// thread draws it.
struct Stream {
  std::uint64_t s;
  Stream(std::uint64_t seed, std::uint64_t index) {
    s = seed ^ (0x9E3779B97F4A7C15ull * (index + 0x632BE59BD9B4E019ull));
    next();
    next();
  }
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0,1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal() {
    double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
  }
  // Marsaglia-Tsang gamma(alpha, 1)
  double gamma_draw(double alpha) {
    if (alpha < 1.0) {
      double u = uniform();
      return gamma_draw(alpha + 1.0) * std::pow(u, 1.0 / alpha);
    }
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
  }
  double chi2_draw(double k) { return 2.0 * gamma_draw(0.5 * k); }
};

struct Prepared {
  int n = 0;
  std::vector<int> nu;      // later neighbours in the vertex order
  std::vector<int> lambda;  // earlier neighbours
  std::vector<double> t;    // upper factor, D^{-1} = T^T T
  double log_prefactor = 0.0;
  std::vector<char> edge;   // adjacency, row-major
  bool has_missing = false;
};

Prepared prepare(const Graph& g, double delta, const SymMatrix& d) {
  Prepared pr;
  const int n = g.num_vertices();
  pr.n = n;
  pr.nu.assign(n, 0);
  pr.lambda.assign(n, 0);
  pr.edge.assign(static_cast<size_t>(n) * n, 0);
  for (const Edge& e : g.edges()) {
    pr.edge[static_cast<size_t>(e.u) * n + e.v] = 1;
    pr.edge[static_cast<size_t>(e.v) * n + e.u] = 1;
    ++pr.nu[e.u];
    ++pr.lambda[e.v];
  }
  pr.has_missing = g.num_edges() < n * (n - 1) / 2;

  // inverse of the scale, then its upper Cholesky-transpose factor
  SymMatrix dinv(n);
  {
    std::vector<double> col(n, 0.0);
    for (int j = 0; j < n; ++j) {
      std::fill(col.begin(), col.end(), 0.0);
      col[j] = 1.0;
      auto x = solve_pd(d, col);
      for (int i = 0; i < n; ++i) dinv(i, j) = x[i];
    }
    dinv.symmetrize();
  }
  std::vector<double> lower;
  if (!cholesky(dinv, lower))
    throw CholeskyFailure("mc_log_constant: scale inverse is not positive definite");
  pr.t.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pr.t[static_cast<size_t>(i) * n + j] = lower[j * n + i];

  double pref = 0.0;
  for (int i = 0; i < n; ++i) {
    pref += 0.5 * (delta + pr.nu[i]) * kLog2 + log_gamma(0.5 * (delta + pr.nu[i]));
    pref += (delta + pr.nu[i] + pr.lambda[i]) *
            std::log(pr.t[static_cast<size_t>(i) * n + i]);
  }
  pref += 0.5 * g.num_edges() * kLog2Pi;
  pr.log_prefactor = pref;
  return pr;
}

// One importance sample; returns log weight (<= 0).
double sample_log_weight(const Prepared& pr, double delta, Stream& rng) {
  const int n = pr.n;
  std::vector<double> psi(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> phi(static_cast<size_t>(n) * n, 0.0);
  auto T = [&](int i, int j) { return pr.t[static_cast<size_t>(i) * n + j]; };
  double log_w = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (j == i) {
        double v = std::sqrt(rng.chi2_draw(delta + pr.nu[i]));
        psi[static_cast<size_t>(i) * n + i] = v;
        phi[static_cast<size_t>(i) * n + i] = v * T(i, i);
      } else if (pr.edge[static_cast<size_t>(i) * n + j]) {
        double v = rng.normal();
        psi[static_cast<size_t>(i) * n + j] = v;
        double acc = 0.0;
        for (int h = i; h <= j; ++h)
          acc += psi[static_cast<size_t>(i) * n + h] * T(h, j);
        phi[static_cast<size_t>(i) * n + j] = acc;
      } else {
        double acc = 0.0;
        for (int h = 0; h < i; ++h)
          acc += phi[static_cast<size_t>(h) * n + i] * phi[static_cast<size_t>(h) * n + j];
        double pij = (i == 0) ? 0.0 : -acc / phi[static_cast<size_t>(i) * n + i];
        phi[static_cast<size_t>(i) * n + j] = pij;
        double back = 0.0;
        for (int h = i; h < j; ++h)
          back += psi[static_cast<size_t>(i) * n + h] * T(h, j);
        double v = (pij - back) / T(j, j);
        psi[static_cast<size_t>(i) * n + j] = v;
        log_w -= 0.5 * v * v;
      }
    }
  }
  return log_w;
}

}  // namespace

McEstimate mc_log_constant(const Graph& g, double delta, const SymMatrix& d,
                           const McConfig& cfg) {
  if (!(delta > 0.0)) throw DomainError("mc_log_constant: need delta > 0");
  if (cfg.n_samples < 1) throw DomainError("mc_log_constant: need n_samples >= 1");
  Prepared pr = prepare(g, delta, d);

  const long n = cfg.n_samples;
  // weights are bounded by 1, so plain accumulation in index order is stable
  double sum = 0.0, sumsq = 0.0;
  for (long s = 0; s < n; ++s) {
    Stream rng(cfg.seed, static_cast<std::uint64_t>(s));
    double w = pr.has_missing ? std::exp(sample_log_weight(pr, delta, rng)) : 1.0;
    sum += w;
    sumsq += w * w;
  }
  double mean = sum / n;
  McEstimate est;
  est.log_value = pr.log_prefactor + std::log(mean);
  if (n > 1) {
    double var = (sumsq - n * mean * mean) / (n - 1.0);
    est.se_log = std::sqrt(var / n) / mean;
  }
  est.ess = (sumsq > 0.0) ? sum * sum / sumsq : 0.0;
  est.degenerate = est.ess < 10.0 && pr.has_missing;
  return est;
}

McStudy mc_replicate_study(const Graph& g, double delta, const SymMatrix& d,
                           const McConfig& cfg) {
  McStudy study;
  const int reps = std::max(1, cfg.n_replicates);
  study.rows.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    McConfig one = cfg;
    one.seed = cfg.seed + static_cast<std::uint64_t>(r);
    one.n_replicates = 1;
    McEstimate est = mc_log_constant(g, delta, d, one);
    study.rows.push_back({one.seed, est.log_value, est.se_log});
  }
  double mn = study.rows[0].log_estimate, mx = mn, mean = 0.0;
  for (const auto& row : study.rows) {
    mn = std::min(mn, row.log_estimate);
    mx = std::max(mx, row.log_estimate);
    mean += row.log_estimate;
  }
  mean /= reps;
  double var = 0.0;
  for (const auto& row : study.rows) {
    double dlt = row.log_estimate - mean;
    var += dlt * dlt;
  }
  study.min = mn;
  study.max = mx;
  study.mean = mean;
  study.sd = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;
  return study;
}

}  // namespace gwish
