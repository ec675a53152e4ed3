#include "csdp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "csdp/errors.hpp"

namespace csdp {

SingularKkt::SingularKkt(std::vector<int> rows)
    : Error([&] {
        std::string s = "constraint matrix is rank deficient; dependent rows:";
        for (int r : rows) s += " " + std::to_string(r + 1);
        return s;
      }()),
      dependent_rows(std::move(rows)) {}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw DimensionMismatch("edge endpoint out of range");
    if (i == j) continue;
    g.adj_[i].push_back(j);
    g.adj_[j].push_back(i);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g.adj_[i].push_back(j);
  return g;
}

bool Graph::has_edge(int i, int j) const {
  const auto& a = adj_[i];
  return std::binary_search(a.begin(), a.end(), j);
}

std::size_t Graph::num_edges() const {
  std::size_t s = 0;
  for (const auto& a : adj_) s += a.size();
  return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n(); ++i)
    for (int j : adj_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::vector<int> Ordering::positions() const {
  std::vector<int> pos(perm.size());
  for (int i = 0; i < size(); ++i) pos[perm[i]] = i;
  return pos;
}

Ordering Ordering::identity(int n) {
  Ordering o;
  o.perm.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0);
  return o;
}

bool Ordering::is_permutation() const {
  std::vector<char> seen(perm.size(), 0);
  for (int v : perm) {
    if (v < 0 || v >= size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<int> CliqueTree::preorder() const {
  auto ch = children();
  std::vector<int> out;
  for (int r : roots) {
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      out.push_back(k);
      for (auto it = ch[k].rbegin(); it != ch[k].rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

std::vector<std::vector<int>> CliqueTree::children() const {
  std::vector<std::vector<int>> ch(cliques.size());
  for (std::size_t k = 0; k < parent.size(); ++k)
    if (parent[k] >= 0) ch[parent[k]].push_back(static_cast<int>(k));
  return ch;
}

ExtensionHeuristic parse_heuristic(const std::string& s) {
  if (s == "mcs-fill") return ExtensionHeuristic::McsFill;
  if (s == "min-degree") return ExtensionHeuristic::MinDegree;
  if (s == "complete-components") return ExtensionHeuristic::CompleteComponents;
  throw std::invalid_argument("unknown chordal extension heuristic: " + s);
}

std::string to_string(ExtensionHeuristic h) {
  switch (h) {
    case ExtensionHeuristic::McsFill: return "mcs-fill";
    case ExtensionHeuristic::MinDegree: return "min-degree";
    case ExtensionHeuristic::CompleteComponents: return "complete-components";
  }
  return "?";
}

// Maximum cardinality search. Numbers vertices from n down to 1; ties go to the smallest index.
// A bucket queue would make this linear, but the scan is fine at our sizes.
Ordering mcs(const Graph& g) {
  const int n = g.n();
  std::vector<int> weight(n, 0);
  std::vector<char> numbered(n, 0);
  Ordering ord;
  ord.perm.assign(n, -1);
  for (int i = n - 1; i >= 0; --i) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
    ord.perm[i] = best;
    numbered[best] = 1;
    for (int u : g.adj(best))
      if (!numbered[u]) ++weight[u];
  }
  return ord;
}

namespace {

// later neighbours of every vertex, sorted by position
std::vector<std::vector<int>> later_neighbors(const Graph& g, const std::vector<int>& pos) {
  std::vector<std::vector<int>> later(g.n());
  for (int v = 0; v < g.n(); ++v) {
    for (int u : g.adj(v))
      if (pos[u] > pos[v]) later[v].push_back(u);
    std::sort(later[v].begin(), later[v].end(),
              [&](int a, int b) { return pos[a] < pos[b]; });
  }
  return later;
}

}  // namespace

// Follower test (Tarjan–Yannakakis): later(v) \ {f} ⊆ later(f) ∪ {f} where
// f is the earliest later neighbour.
bool verify_peo(const Graph& g, const Ordering& ord) {
  if (ord.size() != g.n()) throw DimensionMismatch("ordering size differs from graph size");
  if (!ord.is_permutation()) throw DimensionMismatch("ordering is not a permutation");
  auto pos = ord.positions();
  auto later = later_neighbors(g, pos);
  for (int v = 0; v < g.n(); ++v) {
    if (later[v].size() < 2) continue;
    int f = later[v][0];
    for (std::size_t k = 1; k < later[v].size(); ++k)
      if (!g.has_edge(f, later[v][k])) return false;
  }
  return true;
}

bool is_chordal(const Graph& g) { return verify_peo(g, mcs(g)); }

Graph eliminate(const Graph& g, const Ordering& ord) {
  const int n = g.n();
  auto pos = ord.positions();
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.adj(v).begin(), g.adj(v).end());
  std::vector<std::pair<int, int>> edges;
  for (int v : ord.perm) {
    std::vector<int> later;
    for (int u : adj[v])
      if (pos[u] > pos[v]) later.push_back(u);
    for (std::size_t a = 0; a < later.size(); ++a)
      for (std::size_t b = a + 1; b < later.size(); ++b) {
        adj[later[a]].insert(later[b]);
        adj[later[b]].insert(later[a]);
      }
  }
  for (int v = 0; v < n; ++v)
    for (int u : adj[v])
      if (v < u) edges.emplace_back(v, u);
  return Graph::from_edges(n, edges);
}

Ordering min_degree_order(const Graph& g) {
  const int n = g.n();
  std::vector<std::set<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v].insert(g.adj(v).begin(), g.adj(v).end());
  std::vector<char> done(n, 0);
  Ordering ord;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && (best < 0 || adj[v].size() < adj[best].size())) best = v;
    ord.perm.push_back(best);
    done[best] = 1;
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (int u : nb) adj[u].erase(best);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        adj[nb[a]].insert(nb[b]);
        adj[nb[b]].insert(nb[a]);
      }
    adj[best].clear();
  }
  return ord;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int u : g.adj(members[k]))
        if (comp[u] < 0) {
          comp[u] = comp[s];
          members.push_back(u);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Graph chordal_extension(const Graph& g, ExtensionHeuristic h) {
  switch (h) {
    case ExtensionHeuristic::McsFill: return eliminate(g, mcs(g));
    case ExtensionHeuristic::MinDegree: return eliminate(g, min_degree_order(g));
    case ExtensionHeuristic::CompleteComponents: {
      std::vector<std::pair<int, int>> edges;
      for (const auto& c : connected_components(g))
        for (std::size_t a = 0; a < c.size(); ++a)
          for (std::size_t b = a + 1; b < c.size(); ++b) edges.emplace_back(c[a], c[b]);
      return Graph::from_edges(g.n(), edges);
    }
  }
  return g;
}

// Clique search along a PEO, with the maximality test done through followers: the candidate
// {v} ∪ later(v) is contained in an earlier candidate exactly when some w with
// follower(w) = v has |later(w)| = |later(v)| + 1. Comparing against only the
// last emitted clique misses cases such as a triangle with a pendant vertex.
CliqueSet maximal_cliques(const Graph& g, const Ordering& ord) {
  if (!verify_peo(g, ord)) throw NotPerfectOrdering();
  auto pos = ord.positions();
  auto later = later_neighbors(g, pos);
  std::vector<char> absorbed(g.n(), 0);
  for (int w = 0; w < g.n(); ++w) {
    if (later[w].empty()) continue;
    int f = later[w][0];
    if (later[w].size() == later[f].size() + 1) absorbed[f] = 1;
  }
  CliqueSet out;
  for (int v : ord.perm) {
    if (absorbed[v]) continue;
    Clique c = later[v];
    c.push_back(v);
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

CliqueSet maximal_cliques(const Graph& g) {
  Ordering ord = mcs(g);
  if (!verify_peo(g, ord)) throw NotChordal("graph is not chordal");
  return maximal_cliques(g, ord);
}

namespace {

void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   CliqueSet& out) {
  if (p.empty() && x.empty()) {
    Clique c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  int pivot = -1;
  std::size_t best = 0;
  for (const auto* set : {&p, &x})
    for (int u : *set) {
      std::size_t cnt = 0;
      for (int v : p) cnt += g.has_edge(u, v);
      if (pivot < 0 || cnt > best) {
        pivot = u;
        best = cnt;
      }
    }
  std::vector<int> cand;
  for (int v : p)
    if (!g.has_edge(pivot, v)) cand.push_back(v);
  for (int v : cand) {
    std::vector<int> p2, x2;
    for (int u : p)
      if (g.has_edge(v, u)) p2.push_back(u);
    for (int u : x)
      if (g.has_edge(v, u)) x2.push_back(u);
    r.push_back(v);
    bron_kerbosch(g, r, p2, x2, out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

CliqueSet all_maximal_cliques(const Graph& g) {
  CliqueSet out;
  std::vector<int> r, p(g.n()), x;
  std::iota(p.begin(), p.end(), 0);
  bron_kerbosch(g, r, p, x, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Clique intersect(const Clique& a, const Clique& b) {
  Clique c;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
  return c;
}

}  // namespace

// Prim on the clique intersection graph, weight |Ci ∩ Cj|. Weight-0 pairs are
// not edges, so disconnected input yields a forest rooted at the smallest
// clique index of each component.
CliqueTree clique_tree(const CliqueSet& cs) {
  const int t = static_cast<int>(cs.size());
  CliqueTree ct;
  ct.cliques = cs;
  ct.parent.assign(t, -1);
  ct.separators.assign(t, {});
  std::vector<std::vector<int>> w(t, std::vector<int>(t, 0));
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      w[i][j] = w[j][i] = static_cast<int>(intersect(cs[i], cs[j]).size());
  std::vector<char> in(t, 0);
  std::vector<int> best(t, 0), from(t, -1);
  for (int added = 0; added < t; ++added) {
    int k = -1;
    for (int i = 0; i < t; ++i)
      if (!in[i] && best[i] > 0 && (k < 0 || best[i] > best[k])) k = i;
    if (k < 0) {
      for (int i = 0; i < t; ++i)
        if (!in[i]) {
          k = i;
          break;
        }
      ct.roots.push_back(k);
    } else {
      ct.parent[k] = from[k];
      ct.separators[k] = intersect(cs[k], cs[from[k]]);
    }
    in[k] = 1;
    for (int i = 0; i < t; ++i)
      if (!in[i] && w[k][i] > best[i]) {
        best[i] = w[k][i];
        from[i] = k;
      }
  }
  return ct;
}

CliqueSet merge_cliques(const CliqueTree& ct, double threshold) {
  if (threshold < 0) throw std::invalid_argument("merge threshold must be nonnegative");
  CliqueSet cl = ct.cliques;
  std::vector<int> parent = ct.parent;
  std::vector<char> alive(cl.size(), 1);
  auto order = ct.preorder();
  // bottom-up so a merged child hands its own children to the parent
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int k = *it, p = parent[k];
    if (p < 0) continue;
    double inter = static_cast<double>(intersect(cl[k], cl[p]).size());
    Clique uni;
    std::set_union(cl[k].begin(), cl[k].end(), cl[p].begin(), cl[p].end(),
                   std::back_inserter(uni));
    double rhs = static_cast<double>(cl[k].size() + cl[p].size());
    if (inter > 0) rhs -= threshold * inter;
    if (static_cast<double>(uni.size()) <= rhs) {
      cl[p] = std::move(uni);
      alive[k] = 0;
      for (std::size_t c = 0; c < parent.size(); ++c)
        if (parent[c] == k) parent[c] = p;
    }
  }
  CliqueSet out;
  for (std::size_t k = 0; k < cl.size(); ++k)
    if (alive[k]) out.push_back(cl[k]);
  return out;
}

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0, n = -1;
  long m = -1;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string probe;
    if (!(ss >> probe)) continue;
    ss.clear();
    ss.str(line);
    if (n < 0) {
      if (!(ss >> n >> m) || n < 0 || m < 0) throw ParseError("expected header 'n m'", lineno);
      continue;
    }
    int i = 0, j = 0;
    std::string extra;
    if (!(ss >> i >> j) || (ss >> extra)) throw ParseError("expected 'i j'", lineno);
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("vertex out of range", lineno);
    if (i >= j) throw ParseError("edges must be written with i<j (undirected, no loops)", lineno);
    if (!seen.insert({i, j}).second) throw ParseError("duplicate edge", lineno);
    edges.emplace_back(i - 1, j - 1);
  }
  if (n < 0) throw ParseError("empty graph file", 0);
  if (static_cast<long>(edges.size()) != m)
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()),
                     lineno);
  return Graph::from_edges(n, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0);
  return read_graph(f);
}

void write_graph(std::ostream& out, const Graph& g) {
  auto e = g.edges();
  out << g.n() << ' ' << e.size() << '\n';
  for (auto [i, j] : e) out << i + 1 << ' ' << j + 1 << '\n';
}

}  // namespace csdp
