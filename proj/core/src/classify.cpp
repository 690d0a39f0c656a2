#include "gwish/classify.hpp"

#include <algorithm>
#include <numeric>

#include "gwish/errors.hpp"

namespace gwish {

namespace {

ChordalCompletion trivial_completion(const Graph& g) {
  ChordalCompletion cc;
  cc.base = g;
  cc.completed = g;
  return cc;
}

// no triangle of the completion may contain two fill edges
bool disjoint_fills_ok(const ChordalCompletion& cc) {
  const auto& fills = cc.fill_edges;
  for (size_t i = 0; i < fills.size(); ++i)
    for (size_t j = i + 1; j < fills.size(); ++j) {
      int shared = -1, x = -1, y = -1;
      const Edge &a = fills[i], &b = fills[j];
      if (a.u == b.u) shared = a.u, x = a.v, y = b.v;
      else if (a.u == b.v) shared = a.u, x = a.v, y = b.u;
      else if (a.v == b.u) shared = a.v, x = a.u, y = b.v;
      else if (a.v == b.v) shared = a.v, x = a.u, y = b.u;
      if (shared >= 0 && cc.completed.has_edge(x, y)) return false;
    }
  return true;
}

int union_count(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return static_cast<int>(a.size());
}

bool two_fills_triangle(const ChordalCompletion& cc, PatternTwoFillsTriangle* out) {
  if (cc.tau() != 2) return false;
  const Edge &a = cc.fill_edges[0], &b = cc.fill_edges[1];
  int apex = -1, x = -1, y = -1;
  if (a.u == b.u) apex = a.u, x = a.v, y = b.v;
  else if (a.u == b.v) apex = a.u, x = a.v, y = b.u;
  else if (a.v == b.u) apex = a.v, x = a.u, y = b.v;
  else if (a.v == b.v) apex = a.v, x = a.u, y = b.u;
  if (apex < 0) return false;
  if (!cc.base.has_edge(x, y)) return false;
  const Graph& g = cc.base;
  out->cc = cc;
  out->apex = apex;
  out->end1 = x;
  out->end2 = y;
  auto base_common = g.common_neighbors(x, y);
  out->w = static_cast<int>(base_common.size());
  out->w1 = union_count(g.common_neighbors(x, apex), base_common);
  out->w2 = union_count(g.common_neighbors(y, apex), base_common);
  return true;
}

bool starry_ok(const ChordalCompletion& cc) {
  if (cc.tau() == 0) return false;
  CliqueSequence cs;
  try {
    cs = clique_sequence(cc.completed);
  } catch (const NotChordal&) {
    return false;
  }
  for (const auto& c : cs.cliques)
    if (!star_families(cc.base, c)) return false;
  return true;
}

bool triangle_fills(const ChordalCompletion& cc, PatternTriangleFills* out) {
  if (cc.tau() != 3) return false;
  std::vector<int> vs;
  for (const Edge& e : cc.fill_edges) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.size() != 3) return false;

  out->cc = cc;
  out->tri = {vs[0], vs[1], vs[2]};
  out->gamma = 0;
  out->gamma_edge = {0, 0, 0};
  CliqueSequence cs = clique_sequence(cc.completed);
  auto tally = [&](const std::vector<int>& set, int sign) {
    bool in[3];
    for (int i = 0; i < 3; ++i)
      in[i] = std::binary_search(set.begin(), set.end(), out->tri[i]);
    int count = (in[0] ? 1 : 0) + (in[1] ? 1 : 0) + (in[2] ? 1 : 0);
    int weight = sign * (static_cast<int>(set.size()) + 1);
    if (count == 3) {
      out->gamma += weight;
    } else if (count == 2) {
      // the single fill edge avoiding the absent vertex
      int absent = !in[0] ? 0 : (!in[1] ? 1 : 2);
      // fill edges are the three pairs of tri; edge index = the one not
      // touching tri[absent]
      out->gamma_edge[absent] += weight;
    }
  };
  for (const auto& c : cs.cliques) tally(c, +1);
  for (const auto& s : cs.separators) tally(s, -1);
  if (out->gamma < 4) return false;
  for (int i = 0; i < 3; ++i)
    if (out->gamma_edge[i] <= 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reference families.

Graph gmk_graph(int m, const std::vector<int>& ks) {
  ChordalCompletion cc = gmk_completion(m, ks);
  return cc.base;
}

ChordalCompletion gmk_completion(int m, const std::vector<int>& ks) {
  const int ell = static_cast<int>(ks.size());
  int total = m + std::accumulate(ks.begin(), ks.end(), 0);
  Graph completed(total);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) completed.add_edge(u, v);
  int base_u = m;
  for (int mu = 0; mu < ell; ++mu) {
    std::vector<int> clique{0, 1 + mu};
    for (int i = 0; i < ks[mu]; ++i) clique.push_back(base_u + i);
    base_u += ks[mu];
    for (size_t a = 0; a < clique.size(); ++a)
      for (size_t b = a + 1; b < clique.size(); ++b)
        completed.add_edge(clique[a], clique[b]);
  }
  Graph base(total);
  for (const Edge& e : completed.edges()) {
    bool removed = (e.u == 0 && e.v >= 1 && e.v <= ell);
    if (!removed) base.add_edge(e.u, e.v);
  }
  ChordalCompletion cc;
  cc.base = base;
  cc.completed = completed;
  for (int mu = 1; mu <= ell; ++mu) cc.fill_edges.emplace_back(0, mu);
  return cc;
}

Graph gear_graph(int m) {
  Graph g(2 * m + 1);
  for (int i = 0; i < 2 * m; ++i) g.add_edge(i, (i + 1) % (2 * m));
  for (int i = 0; i < 2 * m; i += 2) g.add_edge(2 * m, i);
  return g;
}

ChordalCompletion gear_completion(int m) {
  ChordalCompletion cc;
  cc.base = gear_graph(m);
  Graph work = cc.base;
  for (int mu = 0; mu + 1 <= m - 1; ++mu) {
    work.add_edge(2 * mu, 2 * mu + 2);
    cc.fill_edges.emplace_back(2 * mu, 2 * mu + 2);
  }
  for (int i = 4; i <= 2 * m - 2; i += 2) {
    if (!work.has_edge(0, i)) {
      work.add_edge(0, i);
      cc.fill_edges.emplace_back(0, i);
    }
  }
  std::sort(cc.fill_edges.begin(), cc.fill_edges.end());
  cc.completed = work;
  return cc;
}

// ---------------------------------------------------------------------------
// Recognizers.

bool recognize_kpartite(const Graph& g, std::vector<int>* parts) {
  const int n = g.num_vertices();
  if (n < 2) return false;
  Graph comp = Graph::complement_of(g);
  auto comps = comp.connected_components();
  parts->clear();
  for (const auto& c : comps) {
    if (!comp.is_clique(c)) return false;
    parts->push_back(static_cast<int>(c.size()));
  }
  if (parts->size() < 2) return false;  // complete graph, not multipartite
  std::sort(parts->rbegin(), parts->rend());
  return true;
}

bool recognize_gmk(const Graph& g, PatternGmk* out) {
  const int n = g.num_vertices();
  for (int a = 0; a < n; ++a) {
    std::vector<int> w_set;
    for (int v = 0; v < n; ++v)
      if (v != a && !g.has_edge(a, v)) w_set.push_back(v);
    const int ell = static_cast<int>(w_set.size());
    if (ell < 3) continue;
    if (!g.is_clique(w_set)) continue;

    std::vector<int> x_set, u_set;
    bool bad = false;
    for (int v : g.neighbors(a)) {
      int wn = 0;
      for (int w : w_set)
        if (g.has_edge(v, w)) ++wn;
      if (wn == ell)
        x_set.push_back(v);
      else if (wn == 1)
        u_set.push_back(v);
      else {
        bad = true;
        break;
      }
    }
    if (bad) continue;
    const int m = 1 + ell + static_cast<int>(x_set.size());
    if (m < 4 || ell > m - 1) continue;

    // group satellites by their unique clique-mate in w_set
    std::vector<std::vector<int>> groups(ell);
    for (int u : u_set) {
      int gi = -1;
      for (int i = 0; i < ell; ++i)
        if (g.has_edge(u, w_set[i])) gi = i;
      groups[gi].push_back(u);
    }
    bool ok = true;
    for (int i = 0; i < ell && ok; ++i)
      if (groups[i].empty()) ok = false;
    if (!ok) continue;

    // assemble candidate relabel and verify exactly
    std::vector<int> to_canonical(n, -1);
    to_canonical[a] = 0;
    for (int i = 0; i < ell; ++i) to_canonical[w_set[i]] = 1 + i;
    for (size_t i = 0; i < x_set.size(); ++i)
      to_canonical[x_set[i]] = 1 + ell + static_cast<int>(i);
    int next = m;
    std::vector<int> ks;
    for (int i = 0; i < ell; ++i) {
      ks.push_back(static_cast<int>(groups[i].size()));
      for (int u : groups[i]) to_canonical[u] = next++;
    }
    if (g.relabeled(to_canonical) == gmk_graph(m, ks)) {
      out->m = m;
      out->ks = ks;
      out->to_canonical = to_canonical;
      return true;
    }
  }
  return false;
}

bool recognize_gear(const Graph& g, PatternGear* out) {
  const int n = g.num_vertices();
  if (n < 7 || n % 2 == 0) return false;
  const int m = (n - 1) / 2;
  for (int hub = 0; hub < n; ++hub) {
    if (g.degree(hub) != m) continue;
    // walk the rim
    std::vector<int> rim;
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (v != hub && g.has_edge(hub, v)) {
        start = v;
        break;
      }
    if (start < 0) continue;
    std::vector<char> seen(n, 0);
    seen[hub] = 1;
    rim.push_back(start);
    seen[start] = 1;
    bool ok = true;
    while (static_cast<int>(rim.size()) < 2 * m && ok) {
      int cur = rim.back();
      int next = -1;
      for (int v = 0; v < n; ++v) {
        if (v == hub || seen[v] || !g.has_edge(cur, v)) continue;
        if (next >= 0) {
          // ambiguous continuation is fine only at the very first step
          if (rim.size() > 1) {
            ok = false;
          }
        }
        if (next < 0) next = v;
      }
      if (next < 0) {
        ok = false;
        break;
      }
      rim.push_back(next);
      seen[next] = 1;
    }
    if (!ok || static_cast<int>(rim.size()) != 2 * m) continue;
    if (!g.has_edge(rim.back(), rim.front())) continue;

    std::vector<int> to_canonical(n, -1);
    to_canonical[hub] = 2 * m;
    for (int i = 0; i < 2 * m; ++i) to_canonical[rim[i]] = i;
    if (g.relabeled(to_canonical) == gear_graph(m)) {
      out->m = m;
      out->to_canonical = to_canonical;
      return true;
    }
    // try the reversed orientation
    std::reverse(rim.begin() + 1, rim.end());
    for (int i = 0; i < 2 * m; ++i) to_canonical[rim[i]] = i;
    if (g.relabeled(to_canonical) == gear_graph(m)) {
      out->m = m;
      out->to_canonical = to_canonical;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

std::string pattern_name(const FillPattern& p) {
  struct Visitor {
    std::string operator()(const PatternChordal&) const { return "chordal"; }
    std::string operator()(const PatternFillIn1&) const { return "fill-in-1"; }
    std::string operator()(const PatternDisjointFills&) const { return "disjoint-fills"; }
    std::string operator()(const PatternTwoFillsTriangle&) const { return "two-fills-triangle"; }
    std::string operator()(const PatternKPartite&) const { return "k-partite"; }
    std::string operator()(const PatternTuran&) const { return "turan"; }
    std::string operator()(const PatternGmk&) const { return "gmk"; }
    std::string operator()(const PatternStarry&) const { return "starry"; }
    std::string operator()(const PatternTriangleFills&) const { return "triangle-fills"; }
    std::string operator()(const PatternGear&) const { return "gear"; }
    std::string operator()(const PatternGeneralSmallTau&) const { return "general-small-tau"; }
    std::string operator()(const PatternIntractable&) const { return "intractable"; }
  };
  return std::visit(Visitor{}, p);
}

namespace {

// Shared branch logic; candidates must be non-empty and all on the same base
// graph.  Priority deviates from a plain class list in two places: fill-in-1
// runs before the multipartite tags so that C4-like graphs (which are also
// complete multipartite) keep their cheap single-edge route, and multipartite
// recognition requires every part >= 2 (a singleton part means the graph is
// a clique join and is always covered by an earlier or later class).
FillPattern classify_candidates(const Graph& g,
                                const std::vector<ChordalCompletion>& candidates) {
  for (const auto& cc : candidates)
    if (cc.tau() == 0) return PatternChordal{cc};

  // exact fill-in-1 probe
  for (const Edge& e : g.non_edges()) {
    Graph work = g;
    work.add_edge(e.u, e.v);
    if (is_chordal(work)) {
      ChordalCompletion cc;
      cc.base = g;
      cc.fill_edges = {e};
      cc.completed = work;
      int w = static_cast<int>(work.common_neighbors(e.u, e.v).size());
      return PatternFillIn1{cc, w};
    }
  }

  std::vector<int> parts;
  if (recognize_kpartite(g, &parts) && parts.back() >= 2) {
    if (parts.front() == 2)
      return PatternTuran{static_cast<int>(parts.size())};
    return PatternKPartite{parts};
  }

  for (const auto& cc : candidates)
    if (disjoint_fills_ok(cc)) {
      PatternDisjointFills p;
      p.cc = cc;
      for (const Edge& e : cc.fill_edges)
        p.w_e.push_back(
            static_cast<int>(cc.completed.common_neighbors(e.u, e.v).size()));
      return p;
    }

  for (const auto& cc : candidates) {
    PatternTwoFillsTriangle p;
    if (two_fills_triangle(cc, &p)) return p;
  }

  {
    PatternGmk p;
    if (recognize_gmk(g, &p)) return p;
  }

  for (const auto& cc : candidates) {
    PatternTriangleFills p;
    if (triangle_fills(cc, &p)) return p;
  }

  {
    PatternGear p;
    if (recognize_gear(g, &p) && p.m >= 4) return p;
  }

  for (const auto& cc : candidates)
    if (starry_ok(cc)) return PatternStarry{cc};

  const ChordalCompletion* best = nullptr;
  for (const auto& cc : candidates)
    if (!best || cc.tau() < best->tau()) best = &cc;
  if (best && best->tau() <= 3) return PatternGeneralSmallTau{*best};

  return PatternIntractable{};
}

}  // namespace

FillPattern classify(const ChordalCompletion& cc) {
  return classify_candidates(cc.base, {cc});
}

FillPattern classify_graph(const Graph& g) {
  std::vector<ChordalCompletion> candidates;
  candidates.push_back(chordal_completion(g, FillHeuristic::GreedyMinFill));
  candidates.push_back(chordal_completion(g, FillHeuristic::McsFill));
  if (auto exact = minimum_fill_completion(g))
    candidates.push_back(*exact);
  // dedupe
  std::vector<ChordalCompletion> unique_cands;
  for (auto& cc : candidates) {
    bool dup = false;
    for (const auto& u : unique_cands)
      if (u.fill_edges == cc.fill_edges) dup = true;
    if (!dup) unique_cands.push_back(std::move(cc));
  }
  return classify_candidates(g, unique_cands);
}

}  // namespace gwish
