#include "gwish/evaluators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "gwish/errors.hpp"
#include "gwish/montecarlo.hpp"
#include "gwish/quadrature.hpp"
#include "gwish/special.hpp"

namespace gwish {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLogPi = 1.14472988584940017414342735135305871;
constexpr double kLog2 = 0.69314718055994530941723212145817657;
constexpr double kClosedFormErr = 1e-12;
}  // namespace

WishartSpec WishartSpec::from_beta(double beta, SymMatrix d) {
  if (!(beta > -1.0)) throw DomainError("WishartSpec: need beta > -1");
  return WishartSpec{beta, std::move(d)};
}

WishartSpec WishartSpec::from_delta(double delta, SymMatrix d) {
  if (!(delta > 0.0)) throw DomainError("WishartSpec: need delta > 0");
  return WishartSpec{0.5 * (delta - 2.0), std::move(d)};
}

double log_clique_factor(int k, double beta) {
  return log_multigamma(k, beta + 0.5 * (k + 1));
}

double log_I_complete(int n, double beta, const SymMatrix& d) {
  if (n == 0) return 0.0;
  return -(beta + 0.5 * (n + 1)) * logdet_pd(d) + log_clique_factor(n, beta);
}

LogValue eval_chordal(const CliqueSequence& cs, double beta, const SymMatrix& d) {
  if (!(beta > -1.0)) throw DomainError("eval_chordal: need beta > -1");
  double s = 0.0;
  for (const auto& c : cs.cliques) {
    SymMatrix dc = d.submatrix(c);
    s += log_I_complete(static_cast<int>(c.size()), beta, dc);
  }
  for (const auto& sep : cs.separators) {
    if (sep.empty()) continue;
    SymMatrix ds = d.submatrix(sep);
    s -= log_I_complete(static_cast<int>(sep.size()), beta, ds);
  }
  return {s, "chordal", kClosedFormErr};
}

LogValue eval_chordal_graph(const Graph& g_star, double beta, const SymMatrix& d) {
  return eval_chordal(clique_sequence(g_star), beta, d);
}

LogValue eval_prime_factorized(
    const Graph& g, const WishartSpec& spec,
    const std::function<LogValue(const Graph&, const SymMatrix&)>& leaf) {
  double total = 0.0, err = 0.0;
  std::set<std::string> methods;
  for (const auto& comp : g.connected_components()) {
    Graph gc = g.induced(comp);
    SymMatrix dc = spec.scale.submatrix(comp);
    auto pd = prime_decomposition(gc);
    for (const auto& p : pd.components) {
      LogValue v = leaf(gc.induced(p), dc.submatrix(p));
      total += v.log_value;
      err += v.err_log;
      methods.insert(v.method);
    }
    for (const auto& s : pd.separators) {
      if (s.empty()) continue;
      total -= log_I_complete(static_cast<int>(s.size()), spec.beta, dc.submatrix(s));
    }
  }
  std::string method;
  for (const auto& m : methods) method += (method.empty() ? "" : "+") + m;
  return {total, method, err};
}

// ---------------------------------------------------------------------------
// Closed forms at identity scale.

LogValue eval_fill1_identity(const PatternFillIn1& p, double beta) {
  LogValue star = eval_chordal_graph(p.cc.completed, beta,
                                     SymMatrix::identity(p.cc.base.num_vertices()));
  double v = star.log_value - 0.5 * kLogPi + log_gamma(beta + 0.5 * (p.w + 2)) -
             log_gamma(beta + 0.5 * (p.w + 3));
  return {v, "fill-in-1", kClosedFormErr};
}

LogValue eval_disjoint_fills(const PatternDisjointFills& p, double beta) {
  LogValue star = eval_chordal_graph(p.cc.completed, beta,
                                     SymMatrix::identity(p.cc.base.num_vertices()));
  double v = star.log_value - 0.5 * p.cc.tau() * kLogPi;
  for (int w : p.w_e)
    v += log_gamma(beta + 0.5 * (w + 2)) - log_gamma(beta + 0.5 * (w + 3));
  return {v, "disjoint-fills", kClosedFormErr};
}

LogValue eval_kpartite(const std::vector<int>& parts, double beta) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  double v = log_clique_factor(n, beta);
  for (int p : parts) {
    v += p * log_gamma(beta + 0.5 * (n - p) + 1.0);
    v -= log_multigamma(p, beta + 0.5 * (n + 1));
  }
  return {v, "k-partite", kClosedFormErr};
}

namespace {

LogValue eval_turan(int pairs, double beta) {
  const int n2 = 2 * pairs;
  double v = -0.5 * pairs * kLogPi + log_clique_factor(n2, beta) +
             pairs * (log_gamma(beta + pairs) -
                      log_gamma(beta + 0.5 * (n2 + 1)));
  return {v, "turan", kClosedFormErr};
}

}  // namespace

LogValue eval_fill2_triangle(const PatternTwoFillsTriangle& p, double beta) {
  LogValue star = eval_chordal_graph(p.cc.completed, beta,
                                     SymMatrix::identity(p.cc.base.num_vertices()));
  double f32 = hyp3f2_unit(beta + 0.5 * (p.w + 4), 0.5, 0.5,
                           beta + 0.5 * (p.w1 + 4), beta + 0.5 * (p.w2 + 4));
  double v = star.log_value - kLogPi +
             log_gamma(beta + 0.5 * (p.w1 + 3)) + log_gamma(beta + 0.5 * (p.w2 + 3)) -
             log_gamma(beta + 0.5 * (p.w1 + 4)) - log_gamma(beta + 0.5 * (p.w2 + 4)) +
             std::log(f32);
  return {v, "two-fills-triangle", 1e-11};
}

LogValue eval_gmk(int m, const std::vector<int>& ks, double beta, double rel_tol) {
  const int ell = static_cast<int>(ks.size());
  const int ksum = std::accumulate(ks.begin(), ks.end(), 0);
  double pref = (ksum - 0.5 * ell) * kLogPi + log_clique_factor(m, beta);
  for (int k : ks) pref += log_multigamma(k, beta + 0.5 * (k + 3));
  const double dof = 2.0 * beta + m + 1;
  auto f = [&](double x) {
    double q = chi2_quantile(dof, x);
    double val = 1.0;
    for (int k : ks) val *= tricomi_u_half(1.5 - 0.5 * k, 0.5 * q);
    return val;
  };
  QuadSpec qs;
  qs.rel_tol = rel_tol;
  auto [iv, ie] = integrate_01(f, qs);
  return {pref + std::log(iv), "gmk-1d", ie / iv + 1e-12};
}

// ---------------------------------------------------------------------------
// Starry machinery: terms (1 + sum_{e in mask} t_e^2)^(-g) assembled from the
// star families of every clique and separator, then symbolically reduced.

namespace {

struct StarTerm {
  std::uint64_t mask;
  double g;  // exponent, positive means decay
};

struct ChainData {
  std::vector<double> a;  // singleton exponents along the path
  std::vector<double> c;  // pair exponents, size p-1
};

// integral over R of (1+t^2)^(-a) (X+t^2)^(-c) dt with X = 1+r^2 equals
//   sqrt(pi) Gamma(a+c-1/2)/Gamma(a+c) (1+r^2)^(-c) 2F1(c, 1/2; a+c; u),
// u = r^2/(1+r^2).  Ends of a chain integrate out through this identity.

double chain_exact_log(const ChainData& cd, double rel_tol) {
  const int p = static_cast<int>(cd.a.size());
  if (p == 2) {
    double a1 = cd.a[0], a2 = cd.a[1], c = cd.c[0];
    if (!(a1 + c > 0.5) || !(a2 + c > 0.5))
      throw DomainError("starry chain: divergent end integral");
    double pref = 0.5 * kLogPi + log_gamma(a1 + c - 0.5) - log_gamma(a1 + c);
    auto f = [&](double u) {
      return std::pow(1.0 - u, a2 + c - 1.5) * hyp2f1(c, 0.5, a1 + c, u);
    };
    QuadSpec qs;
    qs.rel_tol = rel_tol;
    qs.left_singular = true;
    qs.left_exponent = -0.5;
    double q = a2 + c - 1.5;
    if (q < 0.0) {
      qs.right_singular = true;
      qs.right_exponent = q;
    }
    auto mapped = [&](double u) { return std::pow(u, -0.5) * f(u); };
    auto [iv, ie] = integrate_01(mapped, qs);
    return pref + std::log(iv);
  }
  if (p == 3) {
    double al = cd.a[0], am = cd.a[1], ar = cd.a[2];
    double cl = cd.c[0], cr = cd.c[1];
    if (!(al + cl > 0.5) || !(ar + cr > 0.5))
      throw DomainError("starry chain: divergent end integral");
    double pref = kLogPi + log_gamma(al + cl - 0.5) - log_gamma(al + cl) +
                  log_gamma(ar + cr - 0.5) - log_gamma(ar + cr);
    double q = am + cl + cr - 1.5;
    auto f = [&](double u) {
      return std::pow(u, -0.5) * std::pow(1.0 - u, q) *
             hyp2f1(cl, 0.5, al + cl, u) * hyp2f1(cr, 0.5, ar + cr, u);
    };
    QuadSpec qs;
    qs.rel_tol = rel_tol;
    qs.left_singular = true;
    qs.left_exponent = -0.5;
    if (q < 0.0) {
      qs.right_singular = true;
      qs.right_exponent = q;
    }
    auto [iv, ie] = integrate_01(f, qs);
    return pref + std::log(iv);
  }
  throw DomainError("chain_exact_log: only lengths 2 and 3");
}

// Gauss-Legendre nodes/weights on (-1,1).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

double logsumexp(const std::vector<double>& v) {
  double m = -1e308;
  for (double t : v) m = std::max(m, t);
  if (m <= -1e307) return m;
  double s = 0.0;
  for (double t : v) s += std::exp(t - m);
  return m + std::log(s);
}

// Full chain integral on a tan-mapped Gauss grid, log-space sweeps.  Used for
// paths too long for the exact-ends route (cycles beyond C6).
double chain_grid_log(const ChainData& cd, int nodes) {
  const int p = static_cast<int>(cd.a.size());
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  const int nn = nodes;
  std::vector<double> x2(nn), logw(nn);
  for (int j = 0; j < nn; ++j) {
    double theta = (gx[j] + 1.0) * kPi / 4.0;
    double t = std::tan(theta);
    x2[j] = t * t;
    logw[j] = std::log(gw[j] * kPi / 4.0) + std::log1p(x2[j]);
  }
  std::vector<double> logf(nn), tmp(nn), terms(nn);
  for (int j = 0; j < nn; ++j) logf[j] = -cd.a[0] * std::log1p(x2[j]);
  for (int i = 1; i < p; ++i) {
    for (int j = 0; j < nn; ++j) {
      for (int l = 0; l < nn; ++l)
        terms[l] = logw[l] + logf[l] - cd.c[i - 1] * std::log1p(x2[l] + x2[j]);
      tmp[j] = -cd.a[i] * std::log1p(x2[j]) + logsumexp(terms);
    }
    logf.swap(tmp);
  }
  for (int j = 0; j < nn; ++j) terms[j] = logw[j] + logf[j];
  return logsumexp(terms) + p * kLog2;
}

struct GroupResult {
  double log_value;
  double err;
  int kind;  // 0 closed, 1 chain-1d, 2 chain-grid, 3 cube
};

GroupResult eval_term_group(std::vector<StarTerm> terms,
                            const std::vector<int>& vars, double rel_tol) {
  const int p = static_cast<int>(vars.size());
  std::map<int, int> pos;
  for (int i = 0; i < p; ++i) pos[vars[i]] = i;

  // chain detection: all masks of size <= 2, pair terms forming a path
  bool small_masks = true;
  for (const auto& t : terms)
    if (__builtin_popcountll(t.mask) > 2) small_masks = false;

  if (small_masks) {
    std::vector<double> singleton(p, 0.0);
    std::map<std::pair<int, int>, double> pairs;
    for (const auto& t : terms) {
      if (__builtin_popcountll(t.mask) == 1) {
        int v = __builtin_ctzll(t.mask);
        singleton[pos[v]] += t.g;
      } else {
        std::uint64_t m = t.mask;
        int v1 = __builtin_ctzll(m);
        m &= m - 1;
        int v2 = __builtin_ctzll(m);
        pairs[{pos[v1], pos[v2]}] += t.g;
      }
    }
    std::vector<std::vector<std::pair<int, double>>> adj(p);
    for (const auto& [e, g] : pairs) {
      adj[e.first].push_back({e.second, g});
      adj[e.second].push_back({e.first, g});
    }
    bool path = static_cast<int>(pairs.size()) == p - 1;
    int ends = 0;
    for (int i = 0; i < p; ++i) {
      if (adj[i].size() > 2) path = false;
      if (adj[i].size() == 1) ++ends;
    }
    if (path && ends == 2 && p >= 2) {
      int start = 0;
      for (int i = 0; i < p; ++i)
        if (adj[i].size() == 1) {
          start = i;
          break;
        }
      ChainData cd;
      std::vector<char> used(p, 0);
      int cur = start;
      used[cur] = 1;
      cd.a.push_back(singleton[cur]);
      while (static_cast<int>(cd.a.size()) < p) {
        int next = -1;
        double cexp = 0.0;
        for (auto [nb, g] : adj[cur])
          if (!used[nb]) {
            next = nb;
            cexp = g;
          }
        used[next] = 1;
        cd.c.push_back(cexp);
        cd.a.push_back(singleton[next]);
        cur = next;
      }
      if (p <= 3) return {chain_exact_log(cd, rel_tol), rel_tol * 4, 1};
      double prev = chain_grid_log(cd, 200);
      double best = prev, err = 1.0;
      for (int nodes : {400, 800, 1200}) {
        best = chain_grid_log(cd, nodes);
        err = std::abs(best - prev);
        prev = best;
        if (err < std::max(rel_tol, 1e-10)) break;
      }
      return {best, err, 2};
    }
  }

  if (p > 3)
    throw DimensionTooHigh("starry group with more than 3 coupled fill edges");
  // direct low-dimensional quadrature of the product of powers
  auto f = [&](const double* t) -> std::complex<double> {
    double acc = 0.0;
    for (const auto& term : terms) {
      double s = 1.0;
      std::uint64_t m = term.mask;
      while (m) {
        int v = __builtin_ctzll(m);
        m &= m - 1;
        double tv = t[pos.at(v)];
        s += tv * tv;
      }
      acc -= term.g * std::log(s);
    }
    return std::exp(acc);
  };
  QuadSpec qs;
  qs.rel_tol = std::max(rel_tol, 1e-9);
  qs.max_subdivisions = 60;
  auto [v, e] = integrate_cube(p, f, qs);
  return {std::log(v.real()), e / std::abs(v.real()) + 1e-12, 3};
}

struct StarryCore {
  double log_value;
  double err;
  std::string method;
};

StarryCore eval_star_terms(const ChordalCompletion& cc, double beta,
                           double rel_tol) {
  const int tau = cc.tau();
  if (tau > 62) throw DimensionTooHigh("too many fill edges");
  std::map<std::uint64_t, double> terms;
  CliqueSequence cs = clique_sequence(cc.completed);

  auto edge_bit = [&](int u, int v) -> std::uint64_t {
    Edge e(u, v);
    for (int i = 0; i < tau; ++i)
      if (cc.fill_edges[i] == e) return 1ull << i;
    throw Error("starry: fill edge lookup failed");
  };
  auto add_set = [&](const std::vector<int>& set, double sign) {
    auto fams = star_families(cc.base, set);
    if (!fams) throw DomainError("starry: clique is not star-complementary");
    double g = sign * (beta + 0.5 * (static_cast<int>(set.size()) + 1));
    for (const auto& fam : *fams) {
      std::uint64_t mask = 0;
      for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j)
          if (!cc.base.has_edge(fam[i], fam[j]) &&
              cc.completed.has_edge(fam[i], fam[j]))
            mask |= edge_bit(fam[i], fam[j]);
      if (mask) terms[mask] += g;
    }
  };
  for (const auto& c : cs.cliques) add_set(c, +1.0);
  for (const auto& s : cs.separators)
    if (!s.empty()) add_set(s, -1.0);

  std::vector<StarTerm> tl;
  for (auto& [m, g] : terms)
    if (std::abs(g) > 1e-13) tl.push_back({m, g});

  double log_prefix = 0.0;
  // integrate out variables that appear in exactly one term
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < tau && !changed; ++e) {
      int count = 0, idx = -1;
      for (size_t i = 0; i < tl.size(); ++i)
        if (tl[i].mask & (1ull << e)) {
          ++count;
          idx = static_cast<int>(i);
        }
      if (count != 1) continue;
      double g = tl[idx].g;
      if (!(g > 0.5)) throw DomainError("starry: divergent single-term variable");
      log_prefix += 0.5 * kLogPi + log_gamma(g - 0.5) - log_gamma(g);
      tl[idx].g -= 0.5;
      tl[idx].mask &= ~(1ull << e);
      // re-merge
      std::map<std::uint64_t, double> merged;
      for (const auto& t : tl)
        if (t.mask) merged[t.mask] += t.g;
      tl.clear();
      for (auto& [m, g2] : merged)
        if (std::abs(g2) > 1e-13) tl.push_back({m, g2});
      changed = true;
    }
  }

  // group remaining variables by shared terms
  std::vector<int> group(tau, -1);
  int ng = 0;
  for (int e = 0; e < tau; ++e) {
    bool used = false;
    for (const auto& t : tl)
      if (t.mask & (1ull << e)) used = true;
    if (!used || group[e] >= 0) continue;
    std::vector<int> stack{e};
    group[e] = ng;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& t : tl)
        if (t.mask & (1ull << v)) {
          std::uint64_t m = t.mask;
          while (m) {
            int u = __builtin_ctzll(m);
            m &= m - 1;
            if (group[u] < 0) {
              group[u] = ng;
              stack.push_back(u);
            }
          }
        }
    }
    ++ng;
  }

  double total = log_prefix;
  double err = 0.0;
  int worst = 0;
  for (int gi = 0; gi < ng; ++gi) {
    std::vector<int> vars;
    for (int e = 0; e < tau; ++e)
      if (group[e] == gi) vars.push_back(e);
    std::vector<StarTerm> sub;
    for (const auto& t : tl)
      if (group[__builtin_ctzll(t.mask)] == gi) sub.push_back(t);
    GroupResult r = eval_term_group(std::move(sub), vars, rel_tol);
    total += r.log_value;
    err += r.err;
    worst = std::max(worst, r.kind);
  }
  const char* names[4] = {"starry-closed", "starry-1d", "starry-chain", "starry-cube"};
  return {total, err, names[worst]};
}

}  // namespace

LogValue eval_starry(const PatternStarry& p, double beta, double rel_tol) {
  const int n = p.cc.base.num_vertices();
  LogValue star = eval_chordal_graph(p.cc.completed, beta, SymMatrix::identity(n));
  StarryCore core = eval_star_terms(p.cc, beta, rel_tol);
  return {star.log_value - p.cc.tau() * kLogPi + core.log_value, core.method,
          core.err + kClosedFormErr};
}

LogValue log_I_cycle(int n, double beta, double rel_tol) {
  if (n < 3) throw DomainError("log_I_cycle: need n >= 3");
  if (n == 3) return {log_clique_factor(3, beta), "chordal", kClosedFormErr};
  // fan completion: chords from vertex 0
  ChordalCompletion cc;
  cc.base = Graph::cycle(n);
  Graph work = cc.base;
  for (int v = 2; v <= n - 2; ++v) {
    work.add_edge(0, v);
    cc.fill_edges.emplace_back(0, v);
  }
  std::sort(cc.fill_edges.begin(), cc.fill_edges.end());
  cc.completed = work;
  LogValue v = eval_starry(PatternStarry{cc}, beta, rel_tol);
  v.method = "cycle-" + v.method;
  return v;
}

LogValue eval_c6_complement(double beta, double rel_tol) {
  double pref = kLogPi + log_multigamma(4, beta + 2.5) +
                4.0 * log_gamma(beta + 2.5) - 2.0 * log_gamma(beta + 3.0);
  auto f = [&](double t) {
    double h = hyp2f1(0.5, 0.5, beta + 3.0, t);
    return std::pow(t, beta + 2.0) * std::pow(1.0 - t, -0.5) * h * h;
  };
  QuadSpec qs;
  qs.rel_tol = rel_tol;
  qs.right_singular = true;
  qs.right_exponent = -0.5;
  auto [iv, ie] = integrate_01(f, qs);
  return {pref + std::log(iv), "c6-complement-1d", ie / iv + 1e-12};
}

namespace {

// Clique-of-cliques layouts used by the triangular fill route: three cliques
// of sizes g1+2, g2+2, g3+2 glued pairwise at the triangle vertices.
Graph triangle_frame_one(int g1, int g2, int g3) {
  // vertices 0,1,2 = triangle; then g1 mates of {0,1}, g2 of {1,2}, g3 of {2,0}
  int n = 3 + g1 + g2 + g3;
  Graph g(n);
  auto add_clique = [&](std::vector<int> vs) {
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j)
        if (!g.has_edge(vs[i], vs[j])) g.add_edge(vs[i], vs[j]);
  };
  std::vector<int> a{0, 1}, b{1, 2}, c{2, 0};
  int next = 3;
  for (int i = 0; i < g1; ++i) a.push_back(next++);
  for (int i = 0; i < g2; ++i) b.push_back(next++);
  for (int i = 0; i < g3; ++i) c.push_back(next++);
  add_clique(a);
  add_clique(b);
  add_clique(c);
  return g;
}

Graph triangle_frame_two(int g1, int g2, int g3) {
  // same vertex set, triangle edges {1,2} removed and vertex 0 joined to the
  // g2 block instead
  Graph h1 = triangle_frame_one(g1, g2, g3);
  int n = h1.num_vertices();
  Graph g(n);
  for (const Edge& e : h1.edges()) {
    if (e == Edge(1, 2)) continue;
    g.add_edge(e.u, e.v);
  }
  for (int i = 0; i < g2; ++i) g.add_edge(0, 3 + g1 + i);
  return g;
}

}  // namespace

LogValue eval_triangle_fills(const PatternTriangleFills& p, double beta,
                             double rel_tol) {
  const int n = p.cc.base.num_vertices();
  LogValue star = eval_chordal_graph(p.cc.completed, beta, SymMatrix::identity(n));

  // middle role goes to the largest exponent (mildest endpoint singularity)
  int mid = 0;
  for (int i = 1; i < 3; ++i)
    if (p.gamma_edge[i] > p.gamma_edge[mid]) mid = i;
  const int g2 = p.gamma_edge[mid];
  const int g1 = p.gamma_edge[(mid + 1) % 3];
  const int g3 = p.gamma_edge[(mid + 2) % 3];
  const double bt = beta + 0.5 * p.gamma - 2.0;
  if (!(bt > -1.0)) throw DomainError("triangle fills: shifted beta out of range");

  const int m = 3 + g1 + g2 + g3;
  LogValue h1 = eval_chordal_graph(triangle_frame_one(g1, g2, g3), bt,
                                   SymMatrix::identity(m));
  LogValue h2 = eval_chordal_graph(triangle_frame_two(g1, g2, g3), bt,
                                   SymMatrix::identity(m));

  const double a12 = bt + 0.5 * (g1 + g2 + 2), a12p = bt + 0.5 * (g1 + g2 + 3);
  const double a32 = bt + 0.5 * (g3 + g2 + 2), a32p = bt + 0.5 * (g3 + g2 + 3);
  double pref = kLog2 + star.log_value + h2.log_value - h1.log_value +
                log_gamma(a12) - log_gamma(a12p) + log_gamma(a32) - log_gamma(a32p) -
                (0.5 * g2 + 1.0) * kLogPi - log_gamma(0.5 * g2);

  const double fa = bt + 0.5 * (g2 + 3);
  auto f = [&](double u) {
    return std::pow(u, 0.5 * g2 - 1.0) * std::pow(1.0 - u, bt + 1.0) *
           hyp2f1(fa, 0.5, a12p, u) * hyp2f1(fa, 0.5, a32p, u);
  };
  QuadSpec qs;
  qs.rel_tol = rel_tol;
  if (g2 < 2) {
    qs.left_singular = true;
    qs.left_exponent = 0.5 * g2 - 1.0;
  }
  auto [iv, ie] = integrate_01(f, qs);
  double v = pref + std::log(0.5 * iv);
  return {v, "triangle-fills-1d", ie / iv + 1e-11};
}

LogValue eval_gear(int m, double beta, double rel_tol) {
  if (m < 3) throw DomainError("eval_gear: need m >= 3");
  ChordalCompletion gc = gear_completion(m);
  LogValue gstar = eval_chordal_graph(gc.completed, beta,
                                      SymMatrix::identity(2 * m + 1));
  std::vector<int> rim(2 * m);
  std::iota(rim.begin(), rim.end(), 0);
  Graph hstar = gc.completed.induced(rim);  // completion with the hub removed
  LogValue hv = eval_chordal_graph(hstar, beta + 0.5, SymMatrix::identity(2 * m));
  LogValue cyc = log_I_cycle(2 * m, beta + 0.5, rel_tol);
  return {gstar.log_value - hv.log_value + cyc.log_value, "gear",
          cyc.err_log + 2 * kClosedFormErr};
}

// ---------------------------------------------------------------------------
// One fill edge, general scale.

LogValue eval_fill1_generalD(const ChordalCompletion& cc, const WishartSpec& spec,
                             double rel_tol) {
  if (cc.tau() != 1) throw DomainError("eval_fill1_generalD: need exactly one fill edge");
  const Graph& g = cc.base;
  const int n = g.num_vertices();
  const double beta = spec.beta;
  const int va = cc.fill_edges[0].u, vb = cc.fill_edges[0].v;

  SymMatrix d = spec.scale;
  if (d.size() != n) throw DomainError("eval_fill1_generalD: scale size mismatch");

  // diagonal normalization, collecting prod d_ii^(-deg/2 - beta - 1)
  double log_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double dii = d(i, i);
    if (!(dii > 0.0)) throw CholeskyFailure("scale has a non-positive diagonal");
    log_norm += (-0.5 * g.degree(i) - beta - 1.0) * std::log(dii);
  }
  SymMatrix dn(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dn(i, j) = d(i, j) / std::sqrt(d(i, i) * d(j, j));
  // zero entries at non-edges; the integral does not depend on them
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !g.has_edge(i, j)) dn(i, j) = 0.0;

  CliqueSequence cs = clique_sequence(cc.completed);

  struct Factor {
    double r;  // exponent of (t^2 + 2iy t + x)
    double x, y;
  };
  std::vector<Factor> factors;
  double log_pref = 0.0;
  double sum_r = 0.0;

  auto process = [&](const std::vector<int>& set, double sign) {
    double r = -sign * (beta + 0.5 * (static_cast<int>(set.size()) + 1));
    bool has_a = std::find(set.begin(), set.end(), va) != set.end();
    bool has_b = std::find(set.begin(), set.end(), vb) != set.end();
    if (has_a && has_b) {
      std::vector<int> rest;
      for (int v : set)
        if (v != va && v != vb) rest.push_back(v);
      double x_val = 1.0, y_val = 0.0, logdet_rest = 0.0;
      if (!rest.empty()) {
        SymMatrix a = dn.submatrix(rest);
        logdet_rest = logdet_pd(a);
        std::vector<double> ca(rest.size()), cb(rest.size());
        for (size_t i = 0; i < rest.size(); ++i) {
          ca[i] = dn(rest[i], va);
          cb[i] = dn(rest[i], vb);
        }
        auto za = solve_pd(a, ca);
        auto zb = solve_pd(a, cb);
        double saa = 1.0, sbb = 1.0;
        for (size_t i = 0; i < rest.size(); ++i) {
          saa -= ca[i] * za[i];
          sbb -= cb[i] * zb[i];
          y_val += ca[i] * zb[i];
        }
        x_val = saa * sbb - y_val * y_val;
      }
      if (!(x_val > 0.0))
        throw CholeskyFailure("zeroed scale lost positive definiteness");
      log_pref += r * logdet_rest;
      factors.push_back({r, x_val, y_val});
      sum_r += r;
    } else {
      log_pref += r * logdet_pd(dn.submatrix(set));
    }
  };
  for (const auto& c : cs.cliques) process(c, +1.0);
  for (const auto& s : cs.separators)
    if (!s.empty()) process(s, -1.0);

  const double nu = -1.0 - 2.0 * sum_r;
  if (!(nu > 0.0)) throw DomainError("eval_fill1_generalD: divergent integral");
  const double j_pref =
      log_gamma(0.5 * nu) + 0.5 * kLogPi - log_gamma(0.5 * (nu + 1.0));

  auto f = [&](double t) -> std::complex<double> {
    double phi = (nu == 1.0) ? std::tan(kPi * (t - 0.5))
                             : student_t_quantile(nu, t) / std::sqrt(nu);
    double w = 1.0 + phi * phi;
    std::complex<double> acc = 0.0;
    for (const auto& fac : factors) {
      std::complex<double> z(1.0 + (fac.x - 1.0) / w, 2.0 * fac.y * phi / w);
      acc += fac.r * std::log(z);
    }
    return std::exp(acc);
  };
  QuadSpec qs;
  qs.rel_tol = rel_tol;
  auto [jv, je] = integrate_01_complex(f, qs);
  if (std::abs(jv.imag()) > 10.0 * (je + 1e-14 * std::abs(jv.real())))
    throw NonRealResult("eval_fill1_generalD: imaginary residue too large");

  LogValue star = eval_chordal_graph(cc.completed, beta, SymMatrix::identity(n));
  double v = log_norm + star.log_value - kLogPi + log_pref + j_pref +
             std::log(jv.real());
  return {v, "fill1-general-d", je / std::abs(jv.real()) + 1e-12};
}

// ---------------------------------------------------------------------------
// Generic tau <= 3 route at identity scale.

LogValue eval_fourier_generic(const ChordalCompletion& cc, double beta,
                              double rel_tol) {
  const int tau = cc.tau();
  if (tau < 1 || tau > 3)
    throw DimensionTooHigh("eval_fourier_generic: need 1 <= tau <= 3");
  const int n = cc.base.num_vertices();
  CliqueSequence cs = clique_sequence(cc.completed);

  struct SetData {
    std::vector<int> verts;
    std::vector<std::array<int, 3>> entries;  // (row, col, fill index)
    double exponent;
  };
  std::vector<SetData> sets;
  auto add_set = [&](const std::vector<int>& set, double sign) {
    SetData sd;
    sd.verts = set;
    sd.exponent = -sign * (beta + 0.5 * (static_cast<int>(set.size()) + 1));
    for (int e = 0; e < tau; ++e) {
      const Edge& fe = cc.fill_edges[e];
      auto iu = std::find(set.begin(), set.end(), fe.u);
      auto iv = std::find(set.begin(), set.end(), fe.v);
      if (iu != set.end() && iv != set.end())
        sd.entries.push_back({static_cast<int>(iu - set.begin()),
                              static_cast<int>(iv - set.begin()), e});
    }
    if (!sd.entries.empty()) sets.push_back(std::move(sd));
  };
  for (const auto& c : cs.cliques) add_set(c, +1.0);
  for (const auto& s : cs.separators)
    if (!s.empty()) add_set(s, -1.0);

  auto f = [&](const double* t) -> std::complex<double> {
    std::complex<double> acc = 0.0;
    for (const auto& sd : sets) {
      const int k = static_cast<int>(sd.verts.size());
      SymMatrix tm(k);
      for (const auto& en : sd.entries) tm.set(en[0], en[1], t[en[2]]);
      auto ev = symmetric_eigenvalues(tm);
      std::complex<double> logdet = 0.0;
      for (double lam : ev)
        logdet += std::complex<double>(0.5 * std::log1p(lam * lam),
                                       std::atan(lam));
      acc += sd.exponent * logdet;
    }
    return std::exp(acc);
  };
  QuadSpec qs;
  qs.rel_tol = rel_tol;
  qs.max_subdivisions = 60;
  auto [v, e] = integrate_cube(tau, f, qs);
  if (std::abs(v.imag()) > 10.0 * (e + 1e-14 * std::abs(v.real())))
    throw NonRealResult("eval_fourier_generic: imaginary residue too large");

  LogValue star = eval_chordal_graph(cc.completed, beta, SymMatrix::identity(n));
  double lv = star.log_value - tau * kLogPi + std::log(v.real());
  return {lv, "fourier-" + std::to_string(tau) + "d",
          e / std::abs(v.real()) + 1e-12};
}

// ---------------------------------------------------------------------------
// Dispatcher.

bool is_c6_complement(const Graph& g) {
  if (g.num_vertices() != 6 || g.num_edges() != 9) return false;
  Graph c = Graph::complement_of(g);
  for (int v = 0; v < 6; ++v)
    if (c.degree(v) != 2) return false;
  return c.is_connected();  // 2-regular connected on 6 vertices = C6
}

namespace {

LogValue mc_leaf(const Graph& g, const SymMatrix& d, double beta,
                 const EvalOptions& opts) {
  if (!opts.allow_monte_carlo)
    throw IntractableError("no deterministic route and Monte Carlo disabled");
  McConfig cfg;
  cfg.n_samples = opts.mc_samples;
  cfg.seed = opts.mc_seed;
  McEstimate est = mc_log_constant(g, 2.0 * beta + 2.0, d, cfg);
  double log_i = est.log_value -
                 (0.5 * g.num_vertices() * (2.0 * beta + 2.0) + g.num_edges()) * kLog2;
  return {log_i, "mc-fallback", est.se_log};
}

LogValue eval_identity_prime(const Graph& g, double beta, const EvalOptions& opts) {
  FillPattern fp = classify_graph(g);
  struct Visitor {
    const Graph& g;
    double beta;
    const EvalOptions& opts;
    LogValue operator()(const PatternChordal& p) const {
      return eval_chordal_graph(p.cc.completed, beta,
                                SymMatrix::identity(g.num_vertices()));
    }
    LogValue operator()(const PatternFillIn1& p) const {
      return eval_fill1_identity(p, beta);
    }
    LogValue operator()(const PatternDisjointFills& p) const {
      return eval_disjoint_fills(p, beta);
    }
    LogValue operator()(const PatternTwoFillsTriangle& p) const {
      return eval_fill2_triangle(p, beta);
    }
    LogValue operator()(const PatternKPartite& p) const {
      return eval_kpartite(p.parts, beta);
    }
    LogValue operator()(const PatternTuran& p) const {
      return eval_turan(p.pairs, beta);
    }
    LogValue operator()(const PatternGmk& p) const {
      return eval_gmk(p.m, p.ks, beta, std::min(opts.rel_tol, 1e-11));
    }
    LogValue operator()(const PatternStarry& p) const {
      return eval_starry(p, beta, std::min(opts.rel_tol, 1e-11));
    }
    LogValue operator()(const PatternTriangleFills& p) const {
      return eval_triangle_fills(p, beta, std::min(opts.rel_tol, 1e-11));
    }
    LogValue operator()(const PatternGear& p) const {
      return eval_gear(p.m, beta, opts.rel_tol);
    }
    LogValue operator()(const PatternGeneralSmallTau& p) const {
      if (is_c6_complement(g)) return eval_c6_complement(beta);
      return eval_fourier_generic(p.cc, beta, std::max(opts.rel_tol, 1e-8));
    }
    LogValue operator()(const PatternIntractable&) const {
      return mc_leaf(g, SymMatrix::identity(g.num_vertices()), beta, opts);
    }
  };
  return std::visit(Visitor{g, beta, opts}, fp);
}

LogValue eval_prime_leaf(const Graph& g, const SymMatrix& d, double beta,
                         const EvalOptions& opts) {
  if (g.num_vertices() == 0) return {0.0, "empty", 0.0};
  if (!opts.force_method.empty() && opts.force_method != "auto") {
    if (opts.force_method == "mc") return mc_leaf(g, d, beta, opts);
    if (opts.force_method == "fourier") {
      if (!d.is_identity())
        throw DomainError("fourier route requires an identity scale");
      auto cc = chordal_completion(g, FillHeuristic::GreedyMinFill);
      if (auto exact = minimum_fill_completion(g))
        if (exact->tau() < cc.tau()) cc = *exact;
      return eval_fourier_generic(cc, beta, std::max(opts.rel_tol, 1e-8));
    }
    throw DomainError("unknown forced method: " + opts.force_method);
  }
  if (g.is_complete() || is_chordal(g))
    return eval_chordal_graph(g, beta, d);
  if (d.is_identity()) return eval_identity_prime(g, beta, opts);
  // general scale: one fill edge is the only deterministic route
  for (const Edge& e : g.non_edges()) {
    Graph work = g;
    work.add_edge(e.u, e.v);
    if (is_chordal(work)) {
      ChordalCompletion cc;
      cc.base = g;
      cc.fill_edges = {e};
      cc.completed = work;
      return eval_fill1_generalD(cc, WishartSpec{beta, d},
                                 std::min(opts.rel_tol, 1e-11));
    }
  }
  return mc_leaf(g, d, beta, opts);
}

}  // namespace

LogValue log_constant_I(const Graph& g, const WishartSpec& spec,
                        const EvalOptions& opts) {
  if (!(spec.beta > -1.0)) throw DomainError("log_constant: need beta > -1");
  if (spec.scale.size() != g.num_vertices())
    throw DomainError("log_constant: scale dimension mismatch");
  SymMatrix d = spec.scale;
  if (d.max_asymmetry() > 1e-12)
    throw DomainError("log_constant: scale is not symmetric");
  d.symmetrize();
  if (!is_positive_definite(d))
    throw CholeskyFailure("log_constant: scale is not positive definite");
  WishartSpec s{spec.beta, d};
  return eval_prime_factorized(g, s, [&](const Graph& gp, const SymMatrix& dp) {
    return eval_prime_leaf(gp, dp, spec.beta, opts);
  });
}

LogValue log_constant_C(const Graph& g, const WishartSpec& spec,
                        const EvalOptions& opts) {
  LogValue v = log_constant_I(g, spec, opts);
  v.log_value += (0.5 * g.num_vertices() * spec.delta() + g.num_edges()) * kLog2;
  return v;
}

double log_marginal_likelihood(const SymMatrix& scatter, int n_samples,
                               const Graph& g, double delta, const SymMatrix& d,
                               const EvalOptions& opts) {
  const int n = g.num_vertices();
  SymMatrix post(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) post(i, j) = scatter(i, j) + d(i, j);
  LogValue num = log_constant_C(g, WishartSpec::from_delta(delta + n_samples, post), opts);
  LogValue den = log_constant_C(g, WishartSpec::from_delta(delta, d), opts);
  double nch2 = 0.5 * n * (n - 1);
  return -nch2 * kLog2 - 0.5 * n * n_samples * std::log(2.0 * kPi) +
         num.log_value - den.log_value;
}

}  // namespace gwish
