#include "gwish/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

#include "gwish/errors.hpp"

namespace gwish {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(n) * n, 0) {}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph Graph::grid2(int m) {
  Graph g(2 * m);
  for (int j = 0; j + 1 < m; ++j) {
    g.add_edge(j, j + 1);
    g.add_edge(m + j, m + j + 1);
  }
  for (int j = 0; j < m; ++j) g.add_edge(j, m + j);
  return g;
}

Graph Graph::complete_multipartite(const std::vector<int>& parts) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  Graph g(n);
  std::vector<int> part_of(n);
  int v = 0;
  for (size_t p = 0; p < parts.size(); ++p)
    for (int i = 0; i < parts[p]; ++i) part_of[v++] = static_cast<int>(p);
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w)
      if (part_of[u] != part_of[w]) g.add_edge(u, w);
  return g;
}

Graph Graph::complement_of(const Graph& g) {
  Graph c(g.num_vertices());
  for (int u = 0; u < g.num_vertices(); ++u)
    for (int v = u + 1; v < g.num_vertices(); ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  return adj_[static_cast<size_t>(u) * n_ + v] != 0;
}

void Graph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw DomainError("Graph::add_edge: bad endpoints");
  if (has_edge(u, v)) return;
  adj_[static_cast<size_t>(u) * n_ + v] = 1;
  adj_[static_cast<size_t>(v) * n_ + u] = 1;
  edges_.emplace_back(u, v);
  std::sort(edges_.begin(), edges_.end());
}

std::vector<Edge> Graph::non_edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (has_edge(v, u)) out.push_back(u);
  return out;
}

int Graph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u)
    if (has_edge(v, u)) ++d;
  return d;
}

std::vector<int> Graph::common_neighbors(int u, int v) const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w)
    if (w != u && w != v && has_edge(u, w) && has_edge(v, w)) out.push_back(w);
  return out;
}

Graph Graph::induced(const std::vector<int>& verts) const {
  Graph g(static_cast<int>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (has_edge(verts[i], verts[j]))
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
  return g;
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  Graph g(n_);
  for (const Edge& e : edges_) g.add_edge(perm[e.u], perm[e.v]);
  return g;
}

std::vector<std::vector<int>> Graph::connected_components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int u = 0; u < n_; ++u)
        if (has_edge(v, u) && comp[u] < 0) {
          comp[u] = id;
          stack.push_back(u);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  return connected_components().size() == 1;
}

bool Graph::is_complete() const {
  return num_edges() == n_ * (n_ - 1) / 2;
}

bool Graph::is_clique(const std::vector<int>& verts) const {
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (!has_edge(verts[i], verts[j])) return false;
  return true;
}

std::vector<Edge> Graph::canonical_edges() const {
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Edge> best = edges_;
  bool first = true;
  do {
    std::vector<Edge> cur;
    cur.reserve(edges_.size());
    for (const Edge& e : edges_) cur.emplace_back(perm[e.u], perm[e.v]);
    std::sort(cur.begin(), cur.end());
    if (first || cur < best) {
      best = cur;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------

McsResult mcs_order(const Graph& g, const std::vector<int>* tie_rank) {
  const int n = g.num_vertices();
  McsResult res;
  if (n == 0) {
    res.chordal = true;
    return res;
  }
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<int> visit_order;
  visit_order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (visited[v]) continue;
      if (best < 0 || weight[v] > weight[best] ||
          (weight[v] == weight[best] && tie_rank &&
           (*tie_rank)[v] < (*tie_rank)[best]))
        best = v;
    }
    visited[best] = 1;
    visit_order.push_back(best);
    for (int u = 0; u < n; ++u)
      if (!visited[u] && g.has_edge(best, u)) ++weight[u];
  }
  res.elimination_order.assign(visit_order.rbegin(), visit_order.rend());

  // perfect elimination check: later neighbours of each vertex must form a
  // clique; it suffices to test them against the earliest one
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[res.elimination_order[i]] = i;
  res.chordal = true;
  for (int i = 0; i < n && res.chordal; ++i) {
    int v = res.elimination_order[i];
    int first = -1;
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pos[u] > i) {
        later.push_back(u);
        if (first < 0 || pos[u] < pos[first]) first = u;
      }
    for (int u : later)
      if (u != first && !g.has_edge(first, u)) {
        res.chordal = false;
        break;
      }
  }
  return res;
}

bool is_chordal(const Graph& g) { return mcs_order(g).chordal; }

ChordalCompletion chordal_completion(const Graph& g, FillHeuristic heuristic) {
  const int n = g.num_vertices();
  ChordalCompletion cc;
  cc.base = g;
  Graph work = g;
  std::vector<Edge> fills;

  if (heuristic == FillHeuristic::McsFill) {
    auto mcs = mcs_order(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[mcs.elimination_order[i]] = i;
    for (int i = 0; i < n; ++i) {
      int v = mcs.elimination_order[i];
      std::vector<int> later;
      for (int u : work.neighbors(v))
        if (pos[u] > i) later.push_back(u);
      for (size_t a = 0; a < later.size(); ++a)
        for (size_t b = a + 1; b < later.size(); ++b)
          if (!work.has_edge(later[a], later[b])) {
            work.add_edge(later[a], later[b]);
            fills.emplace_back(later[a], later[b]);
          }
    }
  } else {
    std::vector<char> gone(n, 0);
    for (int step = 0; step < n; ++step) {
      int best = -1, best_fill = -1;
      for (int v = 0; v < n; ++v) {
        if (gone[v]) continue;
        std::vector<int> nb;
        for (int u : work.neighbors(v))
          if (!gone[u]) nb.push_back(u);
        int fill = 0;
        for (size_t a = 0; a < nb.size(); ++a)
          for (size_t b = a + 1; b < nb.size(); ++b)
            if (!work.has_edge(nb[a], nb[b])) ++fill;
        if (best < 0 || fill < best_fill) {
          best = v;
          best_fill = fill;
        }
      }
      std::vector<int> nb;
      for (int u : work.neighbors(best))
        if (!gone[u]) nb.push_back(u);
      std::sort(nb.begin(), nb.end());
      for (size_t a = 0; a < nb.size(); ++a)
        for (size_t b = a + 1; b < nb.size(); ++b)
          if (!work.has_edge(nb[a], nb[b])) {
            work.add_edge(nb[a], nb[b]);
            fills.emplace_back(nb[a], nb[b]);
          }
      gone[best] = 1;
    }
  }
  std::sort(fills.begin(), fills.end());
  cc.fill_edges = fills;
  cc.completed = work;
  return cc;
}

std::optional<ChordalCompletion> minimum_fill_completion(const Graph& g,
                                                         int max_tau) {
  if (is_chordal(g)) {
    ChordalCompletion cc;
    cc.base = g;
    cc.completed = g;
    return cc;
  }
  auto missing = g.non_edges();
  const int m = static_cast<int>(missing.size());
  const long work_cap = 2000000;
  long cumulative = 0;
  for (int tau = 1; tau <= max_tau && tau <= m; ++tau) {
    // count subsets at this size
    double cnt = 1;
    for (int i = 0; i < tau; ++i) cnt = cnt * (m - i) / (i + 1);
    cumulative += static_cast<long>(cnt);
    if (cumulative > work_cap) return std::nullopt;
    std::vector<int> idx(tau);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Graph work = g;
      for (int i : idx) work.add_edge(missing[i].u, missing[i].v);
      if (is_chordal(work)) {
        ChordalCompletion cc;
        cc.base = g;
        for (int i : idx) cc.fill_edges.push_back(missing[i]);
        cc.completed = work;
        return cc;
      }
      // next lexicographic combination
      int k = tau - 1;
      while (k >= 0 && idx[k] == m - tau + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < tau; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CliqueSequence clique_sequence(const Graph& g_star, const std::vector<int>* tie_rank) {
  const int n = g_star.num_vertices();
  auto mcs = mcs_order(g_star, tie_rank);
  if (!mcs.chordal) throw NotChordal("clique_sequence: graph is not chordal");

  // candidate cliques {v} + later neighbours along the elimination order
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[mcs.elimination_order[i]] = i;
  std::vector<std::vector<int>> cands;
  for (int i = 0; i < n; ++i) {
    int v = mcs.elimination_order[i];
    std::vector<int> c{v};
    for (int u : g_star.neighbors(v))
      if (pos[u] > i) c.push_back(u);
    std::sort(c.begin(), c.end());
    cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<std::vector<int>> cliques;
  for (const auto& c : cands) {
    bool maximal = true;
    for (const auto& d : cands) {
      if (&c == &d || d.size() <= c.size()) continue;
      if (std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) cliques.push_back(c);
  }

  // junction tree: maximum-weight spanning forest on intersection sizes,
  // then a BFS order gives a perfect sequence
  const int m = static_cast<int>(cliques.size());
  struct JEdge {
    int w, a, b;
  };
  std::vector<JEdge> jedges;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      std::vector<int> inter;
      std::set_intersection(cliques[a].begin(), cliques[a].end(),
                            cliques[b].begin(), cliques[b].end(),
                            std::back_inserter(inter));
      jedges.push_back({static_cast<int>(inter.size()), a, b});
    }
  std::stable_sort(jedges.begin(), jedges.end(), [](const JEdge& x, const JEdge& y) {
    if (x.w != y.w) return x.w > y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  std::vector<int> parent_set(m);
  std::iota(parent_set.begin(), parent_set.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent_set[x] != x) x = parent_set[x] = parent_set[parent_set[x]];
    return x;
  };
  std::vector<std::vector<int>> tree(m);
  for (const auto& e : jedges) {
    if (find(e.a) == find(e.b)) continue;
    parent_set[find(e.a)] = find(e.b);
    tree[e.a].push_back(e.b);
    tree[e.b].push_back(e.a);
  }

  CliqueSequence seq;
  std::vector<char> used(m, 0);
  std::vector<int> order;
  for (int root = 0; root < m; ++root) {
    if (used[root]) continue;
    std::vector<int> queue{root};
    used[root] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int c = queue[qi];
      order.push_back(c);
      for (int d : tree[c])
        if (!used[d]) {
          used[d] = 1;
          queue.push_back(d);
        }
    }
  }
  std::vector<char> in_union(n, 0);
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& c = cliques[order[i]];
    if (i > 0) {
      std::vector<int> sep;
      for (int v : c)
        if (in_union[v]) sep.push_back(v);
      seq.separators.push_back(std::move(sep));
    }
    for (int v : c) in_union[v] = 1;
    seq.cliques.push_back(c);
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Minimal triangulation (MCS-M) and clique-minimal-separator decomposition.

namespace {

struct McsM {
  std::vector<int> elimination_order;
  Graph filled;
};

McsM mcs_m(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> weight(n, 0);
  std::vector<char> numbered(n, 0);
  Graph filled = g;
  std::vector<int> visit;
  visit.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
    visit.push_back(best);
    numbered[best] = 1;
    // u is reached when a path from best runs through unnumbered vertices of
    // strictly smaller weight than w(u)
    std::vector<char> reached(n, 0);
    for (int u = 0; u < n; ++u) {
      if (numbered[u] || u == best) continue;
      std::vector<char> seen(n, 0);
      std::vector<int> stack{best};
      seen[best] = 1;
      bool ok = false;
      while (!stack.empty() && !ok) {
        int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; ++y) {
          if (!g.has_edge(x, y) || seen[y]) continue;
          if (y == u) {
            ok = true;
            break;
          }
          if (!numbered[y] && weight[y] < weight[u]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      if (ok) reached[u] = 1;
    }
    for (int u = 0; u < n; ++u)
      if (reached[u]) {
        ++weight[u];
        if (!filled.has_edge(best, u)) filled.add_edge(best, u);
      }
  }
  McsM out;
  out.elimination_order.assign(visit.rbegin(), visit.rend());
  out.filled = filled;
  return out;
}

}  // namespace

PrimeDecomposition prime_decomposition(const Graph& g) {
  const int n = g.num_vertices();
  PrimeDecomposition out;
  if (n == 0) return out;

  auto mm = mcs_m(g);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[mm.elimination_order[i]] = i;

  std::vector<char> removed(n, 0);
  for (int i = 0; i < n; ++i) {
    int x = mm.elimination_order[i];
    if (removed[x]) continue;
    std::vector<int> sep;
    for (int u : mm.filled.neighbors(x))
      if (pos[u] > i && !removed[u]) sep.push_back(u);
    std::sort(sep.begin(), sep.end());
    if (!g.is_clique(sep)) continue;
    // component of x in the remaining graph minus sep
    std::vector<char> in_sep(n, 0);
    for (int v : sep) in_sep[v] = 1;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{x}, comp;
    seen[x] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u = 0; u < n; ++u)
        if (g.has_edge(v, u) && !seen[u] && !removed[u] && !in_sep[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    int remaining = 0;
    for (int v = 0; v < n; ++v)
      if (!removed[v]) ++remaining;
    if (static_cast<int>(comp.size() + sep.size()) >= remaining) continue;  // nothing split off
    std::vector<int> atom = comp;
    atom.insert(atom.end(), sep.begin(), sep.end());
    std::sort(atom.begin(), atom.end());
    out.components.push_back(atom);
    out.separators.push_back(sep);
    for (int v : comp) removed[v] = 1;
  }
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) rest.push_back(v);
  if (!rest.empty()) out.components.push_back(rest);
  return out;
}

bool is_prime(const Graph& g) {
  if (!g.is_connected()) return false;
  return prime_decomposition(g).components.size() == 1;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Edge>> partition_missing_edges(const ChordalCompletion& cc) {
  const auto& missing = cc.fill_edges;
  const int k = static_cast<int>(missing.size());
  std::vector<int> group(k);
  std::iota(group.begin(), group.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };

  auto group_vertices = [&](int root) {
    std::vector<int> vs;
    for (int i = 0; i < k; ++i)
      if (find(i) == root) {
        vs.push_back(missing[i].u);
        vs.push_back(missing[i].v);
      }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> roots;
    for (int i = 0; i < k; ++i)
      if (find(i) == i) roots.push_back(i);
    for (size_t a = 0; a < roots.size() && !changed; ++a) {
      for (size_t b = a + 1; b < roots.size() && !changed; ++b) {
        auto va = group_vertices(roots[a]);
        auto vb = group_vertices(roots[b]);
        std::vector<int> inter;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                              std::back_inserter(inter));
        bool violate = false;
        if (inter.size() >= 2) {
          violate = true;
        } else if (inter.size() == 1) {
          for (int x : va) {
            if (x == inter[0]) continue;
            for (int y : vb) {
              if (y == inter[0]) continue;
              if (cc.completed.has_edge(x, y)) violate = true;
            }
          }
        }
        if (violate) {
          group[find(roots[a])] = find(roots[b]);
          changed = true;
        }
      }
    }
  }

  std::vector<std::vector<Edge>> parts;
  std::vector<int> root_of;
  for (int i = 0; i < k; ++i) {
    int r = find(i);
    auto it = std::find(root_of.begin(), root_of.end(), r);
    size_t gi;
    if (it == root_of.end()) {
      root_of.push_back(r);
      parts.emplace_back();
      gi = parts.size() - 1;
    } else {
      gi = static_cast<size_t>(it - root_of.begin());
    }
    parts[gi].push_back(missing[i]);
  }
  return parts;
}

std::optional<std::vector<std::vector<int>>> star_families(
    const Graph& g, const std::vector<int>& clique) {
  // components of the complement restricted to the clique's vertices
  const int k = static_cast<int>(clique.size());
  std::vector<std::vector<int>> comp_adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!g.has_edge(clique[i], clique[j])) {
        comp_adj[i].push_back(j);
        comp_adj[j].push_back(i);
      }
  std::vector<int> comp(k, -1);
  std::vector<std::vector<int>> families;
  for (int s = 0; s < k; ++s) {
    if (comp[s] >= 0 || comp_adj[s].empty()) continue;
    std::vector<int> stack{s}, members;
    comp[s] = s;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int u : comp_adj[v])
        if (comp[u] < 0) {
          comp[u] = s;
          stack.push_back(u);
        }
    }
    // star test: |edges| = |members|-1 and some vertex touches every edge
    int edge_count = 0;
    for (int v : members) edge_count += static_cast<int>(comp_adj[v].size());
    edge_count /= 2;
    if (edge_count != static_cast<int>(members.size()) - 1) return std::nullopt;
    bool has_center = false;
    for (int v : members)
      if (static_cast<int>(comp_adj[v].size()) == edge_count) has_center = true;
    if (!has_center) return std::nullopt;
    std::vector<int> fam;
    for (int v : members) fam.push_back(clique[v]);
    std::sort(fam.begin(), fam.end());
    families.push_back(std::move(fam));
  }
  std::sort(families.begin(), families.end());
  return families;
}

}  // namespace gwish
