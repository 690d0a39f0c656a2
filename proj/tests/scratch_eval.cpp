// Development smoke harness for the evaluator stack.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "gwish/classify.hpp"
#include "gwish/evaluators.hpp"
#include "gwish/graph.hpp"
#include "gwish/montecarlo.hpp"
#include "gwish/special.hpp"

using namespace gwish;

static int fails = 0;
static void check(const std::string& name, double got, double want, double tol) {
  double rel = std::abs(got - want) / std::max(1.0, std::abs(want));
  if (!(rel <= tol)) {
    std::printf("FAIL %-34s got=%.15g want=%.15g rel=%.3g\n", name.c_str(), got, want, rel);
    ++fails;
  } else {
    std::printf("ok   %-34s rel=%.3g\n", name.c_str(), rel);
  }
}
static void check_str(const std::string& name, const std::string& got, const std::string& want) {
  if (got != want) {
    std::printf("FAIL %-34s got=%s want=%s\n", name.c_str(), got.c_str(), want.c_str());
    ++fails;
  } else {
    std::printf("ok   %-34s %s\n", name.c_str(), got.c_str());
  }
}

static Graph k5k6_overlap() {
  // K6 on {0..5} union K5 on {0,1,2,6,7}, minus three 2-edge stars
  Graph g(8);
  auto add_clique = [&](std::vector<int> vs) {
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j)
        if (!g.has_edge(vs[i], vs[j])) g.add_edge(vs[i], vs[j]);
  };
  add_clique({0, 1, 2, 3, 4, 5});
  add_clique({0, 1, 2, 6, 7});
  Graph out(8);
  for (const Edge& e : g.edges()) {
    bool missing = (e == Edge(0, 5)) || (e == Edge(4, 5)) || (e == Edge(0, 7)) ||
                   (e == Edge(6, 7)) || (e == Edge(1, 2)) || (e == Edge(2, 3));
    if (!missing) out.add_edge(e.u, e.v);
  }
  return out;
}

int main() {
  EvalOptions opts;
  SymMatrix i4 = SymMatrix::identity(4), i5 = SymMatrix::identity(5),
            i6 = SymMatrix::identity(6), i7 = SymMatrix::identity(7),
            i8 = SymMatrix::identity(8);

  // classification
  check_str("classify C4", pattern_name(classify_graph(Graph::cycle(4))), "fill-in-1");
  check_str("classify C5", pattern_name(classify_graph(Graph::cycle(5))), "two-fills-triangle");
  check_str("classify C6", pattern_name(classify_graph(Graph::cycle(6))), "starry");
  check_str("classify C6c", pattern_name(classify_graph(Graph::complement_of(Graph::cycle(6)))), "general-small-tau");
  check_str("classify T63", pattern_name(classify_graph(Graph::complete_multipartite({2, 2, 2}))), "turan");
  check_str("classify K33", pattern_name(classify_graph(Graph::complete_multipartite({3, 3}))), "k-partite");
  check_str("classify G(4;1,1,1)", pattern_name(classify_graph(gmk_graph(4, {1, 1, 1}))), "gmk");
  check_str("classify gear4", pattern_name(classify_graph(gear_graph(4))), "gear");
  check_str("classify gear3", pattern_name(classify_graph(gear_graph(3))), "triangle-fills");
  // the overlap graph has minimum fill-in 2, so the dispatcher takes the
  // cheaper route; the explicit 6-fill completion must classify starry
  check_str("classify K5K6", pattern_name(classify_graph(k5k6_overlap())), "two-fills-triangle");
  check_str("classify K6-2matching",
            pattern_name(classify_graph(Graph::complete_multipartite({2, 2, 1, 1}))), "fill-in-1");

  // C5 witness values
  {
    FillPattern fp = classify_graph(Graph::cycle(5));
    auto* p = std::get_if<PatternTwoFillsTriangle>(&fp);
    if (p) {
      check("C5 w", p->w, 0, 0);
      check("C5 w1", p->w1, 1, 0);
      check("C5 w2", p->w2, 1, 0);
    }
  }

  struct Ref { const char* name; double b0, b15, b9; };
  // frozen independent-quadrature values of the one-dimensional forms
  Ref refs_c5 = {"C5", 2.289459771698800348, 6.330882720311877969, 72.56501240244867486};
  Ref refs_k5k6 = {"K5K6", 9.485640352470549268, 18.86255392427254746, 130.0025195582190747};
  Ref refs_t63 = {"T63", 7.40292146547970777, 14.29778106037827238, 97.54778142384704286};
  Ref refs_c6 = {"C6", 2.723813448205497408, 7.593803819473486316, 87.07794420673469823};
  Ref refs_c6c = {"C6c", 4.759110177413687764, 10.7818775280891429, 92.26496307308937658};
  // corrected one-dimensional gear-3 values (the printed display is low by
  // pi^2; confirmed against MC and the cycle relation)
  Ref refs_gear3 = {"gear3", 4.301484062715362, 10.869823123197179, 105.01682635143416};
  Ref refs_g4111 = {"G4111", 4.389809483679323722, 10.92917553187032655, 105.0384302654689767};
  Ref refs_k33 = {"K33", 4.559795818144631825, 10.65709508465212664, 92.22149678390892438};

  auto run3 = [&](const char* name, const Graph& g, const Ref& r, double tol) {
    SymMatrix id = SymMatrix::identity(g.num_vertices());
    double betas[3] = {0.0, 1.5, 9.0};
    double wants[3] = {r.b0, r.b15, r.b9};
    for (int i = 0; i < 3; ++i) {
      LogValue v = log_constant_I(g, WishartSpec::from_beta(betas[i], id), opts);
      check(std::string(name) + " b=" + std::to_string(betas[i]).substr(0, 3),
            v.log_value, wants[i], 1e-9);
    }
  };
  run3("C5", Graph::cycle(5), refs_c5, 1e-9);
  run3("K5K6", k5k6_overlap(), refs_k5k6, 1e-9);
  run3("T63", Graph::complete_multipartite({2, 2, 2}), refs_t63, 1e-9);
  run3("C6", Graph::cycle(6), refs_c6, 1e-9);
  run3("C6c", Graph::complement_of(Graph::cycle(6)), refs_c6c, 1e-9);
  run3("gear3", gear_graph(3), refs_gear3, 1e-9);
  run3("G4111", gmk_graph(4, {1, 1, 1}), refs_g4111, 1e-9);
  run3("K33", Graph::complete_multipartite({3, 3}), refs_k33, 1e-9);

  // methods
  check_str("C6 method",
            log_constant_I(Graph::cycle(6), WishartSpec::from_beta(0, i6), opts).method,
            "starry-1d");

  // fourier generic route equivalence at beta=0
  {
    Graph c6 = Graph::cycle(6);
    auto cc = chordal_completion(c6, FillHeuristic::GreedyMinFill);
    LogValue f = eval_fourier_generic(cc, 0.0, 1e-8);
    check("C6 fourier-3d", f.log_value, refs_c6.b0, 3e-7);
    Graph c6c = Graph::complement_of(c6);
    auto cc2 = minimum_fill_completion(c6c);
    LogValue f2 = eval_fourier_generic(*cc2, 0.0, 1e-8);
    check("C6c fourier-3d", f2.log_value, refs_c6c.b0, 3e-7);
  }

  // gear(m=3) via the gear relation matches the triangle-fills value
  {
    LogValue g3 = eval_gear(3, 1.5, 1e-10);
    check("gear relation m=3", g3.log_value, refs_gear3.b15, 1e-8);
    LogValue g3b = eval_gear(3, 0.0, 1e-10);
    check("gear relation m=3 b=0", g3b.log_value, refs_gear3.b0, 1e-8);
  }

  // the explicit 6-fill completion of the overlap graph: starry route and
  // the partition of its missing edges
  {
    Graph g = k5k6_overlap();
    ChordalCompletion cc;
    cc.base = g;
    Graph comp = g;
    for (Edge e : {Edge(0, 5), Edge(4, 5), Edge(0, 7), Edge(6, 7), Edge(1, 2), Edge(2, 3)}) {
      cc.fill_edges.push_back(e);
      comp.add_edge(e.u, e.v);
    }
    std::sort(cc.fill_edges.begin(), cc.fill_edges.end());
    cc.completed = comp;
    check_str("classify explicit K5K6 cc", pattern_name(classify(cc)), "starry");
    auto parts = partition_missing_edges(cc);
    check("K5K6 partition groups", parts.size(), 3, 0);
    LogValue sv = eval_starry(PatternStarry{cc}, 9.0, 1e-11);
    check("K5K6 starry route b=9", sv.log_value, refs_k5k6.b9, 1e-11);
    check_str("K5K6 starry method", sv.method, "starry-closed");
  }

  // longer cycles: grid-swept chain vs Monte Carlo
  {
    LogValue c8 = log_I_cycle(8, 9.5, 1e-10);
    McConfig cfg; cfg.n_samples = 200000; cfg.seed = 5;
    McEstimate est = mc_log_constant(Graph::cycle(8), 2 * 9.5 + 2, SymMatrix::identity(8), cfg);
    double mc_logI = est.log_value - (0.5 * 8 * 21.0 + 8) * std::log(2.0);
    std::printf("     C8 b=9.5: chain=%.6f mc=%.6f se=%.4f dev/se=%.2f\n",
                c8.log_value, mc_logI, est.se_log, (c8.log_value - mc_logI) / est.se_log);
    check("C8 chain vs mc", std::abs(c8.log_value - mc_logI) < 4 * est.se_log, 1, 0);
    LogValue c7 = log_I_cycle(7, 2.0, 1e-10);
    McEstimate est7 = mc_log_constant(Graph::cycle(7), 6.0, SymMatrix::identity(7), cfg);
    double mc7 = est7.log_value - (0.5 * 7 * 6.0 + 7) * std::log(2.0);
    std::printf("     C7 b=2: chain=%.6f mc=%.6f se=%.4f dev/se=%.2f\n",
                c7.log_value, mc7, est7.se_log, (c7.log_value - mc7) / est7.se_log);
    check("C7 chain vs mc", std::abs(c7.log_value - mc7) < 4 * est7.se_log, 1, 0);
    // gear m=4 at beta=0 vs MC
    LogValue g4 = eval_gear(4, 0.0, 1e-10);
    McEstimate estg = mc_log_constant(gear_graph(4), 2.0, SymMatrix::identity(9), cfg);
    double mcg = estg.log_value - (0.5 * 9 * 2.0 + gear_graph(4).num_edges()) * std::log(2.0);
    std::printf("     gear4 b=0: gear=%.6f mc=%.6f se=%.4f dev/se=%.2f\n",
                g4.log_value, mcg, estg.se_log, (g4.log_value - mcg) / estg.se_log);
    check("gear4 vs mc", std::abs(g4.log_value - mcg) < 4 * estg.se_log, 1, 0);
  }

  // cycles through the chain grid vs the exact route
  {
    LogValue c6a = log_I_cycle(6, 2.25, 1e-10);
    // independent: dispatcher（starry-1d route)
    LogValue c6b = log_constant_I(Graph::cycle(6), WishartSpec::from_beta(2.25, i6), opts);
    check("cycle6 starry vs dispatcher", c6a.log_value, c6b.log_value, 1e-10);
  }

  // prime decomposition of the 2 x m grid
  {
    auto pd = prime_decomposition(Graph::grid2(3));
    check("grid2(3) components", pd.components.size(), 2, 0);
    check("grid2(3) separators", pd.separators.size(), 1, 0);
    // value: two C4 factors over one K2 separator
    double c4 = log_constant_I(Graph::cycle(4), WishartSpec::from_beta(1.5, i4), opts).log_value;
    double sep = -(1.5 + 1.5) * 0.0 + log_multigamma(2, 1.5 + 1.5);
    double want = 2 * c4 - sep;
    double got = log_constant_I(Graph::grid2(3), WishartSpec::from_beta(1.5, SymMatrix::identity(6)), opts).log_value;
    check("grid2(3) factorization", got, want, 1e-10);
  }

  // fill1 general-D at identity equals the identity closed form
  {
    Graph c4 = Graph::cycle(4);
    FillPattern fp = classify_graph(c4);
    auto* p1 = std::get_if<PatternFillIn1>(&fp);
    LogValue a = eval_fill1_identity(*p1, 2.0);
    LogValue b = eval_fill1_generalD(p1->cc, WishartSpec::from_beta(2.0, i4), 1e-12);
    check("fill1 generalD at identity", b.log_value, a.log_value, 1e-10);
  }

  // Monte Carlo against the complete-graph closed form (exact weights)
  {
    SymMatrix d(3);
    d(0, 0) = 2.0; d(1, 1) = 1.0; d(2, 2) = 1.5;
    d.set(0, 1, 0.3); d.set(0, 2, -0.2); d.set(1, 2, 0.5);
    McConfig cfg; cfg.n_samples = 10;
    McEstimate est = mc_log_constant(Graph::complete(3), 7.0, d, cfg);
    double want = (0.5 * 3 * 7.0 + 3) * std::log(2.0) +
                  log_I_complete(3, 2.5, d);
    check("mc complete graph exact", est.log_value, want, 1e-12);
  }
  // Monte Carlo on C6 near the exact value
  {
    McConfig cfg; cfg.n_samples = 20000; cfg.seed = 7;
    McEstimate est = mc_log_constant(Graph::cycle(6), 20.0, i6, cfg);
    double exact = refs_c6.b9 + (0.5 * 6 * 20.0 + 6) * std::log(2.0);
    std::printf("     mc C6: est=%.6f exact=%.6f se=%.4f dev/se=%.2f\n",
                est.log_value, exact, est.se_log,
                (est.log_value - exact) / est.se_log);
    check("mc C6 within 4se", std::abs(est.log_value - exact) < 4 * est.se_log, 1, 0);
  }

  // Iris marginal likelihoods
  {
    SymMatrix u(4);
    double uv[4][4] = {{19.8128, 4.5944, 14.8612, 2.4056},
                       {4.5944, 5.0962, 3.4976, 2.3338},
                       {14.8612, 3.4976, 14.9248, 2.3924},
                       {2.4056, 2.3338, 2.3924, 3.6962}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) u(i, j) = uv[i][j];
    Graph cyc_a(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Graph cyc_b(4, {{0, 1}, {1, 3}, {2, 3}, {0, 2}});
    Graph cyc_c(4, {{0, 2}, {1, 2}, {1, 3}, {0, 3}});
    auto t0 = std::chrono::steady_clock::now();
    double la = log_marginal_likelihood(u, 50, cyc_a, 3.0, i4, opts);
    double lb = log_marginal_likelihood(u, 50, cyc_b, 3.0, i4, opts);
    double lc = log_marginal_likelihood(u, 50, cyc_c, 3.0, i4, opts);
    auto t1 = std::chrono::steady_clock::now();
    std::printf("     iris cycles: a=%.6f b=%.6f c=%.6f  (%.1f ms)\n", la, lb, lc,
                std::chrono::duration<double, std::milli>(t1 - t0).count());
  }

  std::printf(fails ? "\n%d FAILURES\n" : "\nall ok\n", fails);
  return fails ? 1 : 0;
}
