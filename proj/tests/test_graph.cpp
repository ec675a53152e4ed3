#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "csdp/errors.hpp"
#include "csdp/graph.hpp"
#include "csdp/partition.hpp"
#include "oracle/random_instances.hpp"

using namespace csdp;

namespace {

// 1-based edge list helper
Graph G(int n, std::initializer_list<std::pair<int, int>> e1) {
  std::vector<std::pair<int, int>> e;
  for (auto [i, j] : e1) e.emplace_back(i - 1, j - 1);
  return Graph::from_edges(n, e);
}

Ordering O(std::initializer_list<int> p1) {
  Ordering o;
  for (int v : p1) o.perm.push_back(v - 1);
  return o;
}

CliqueSet C(std::initializer_list<std::initializer_list<int>> cs) {
  CliqueSet out;
  for (auto c : cs) {
    Clique k;
    for (int v : c) k.push_back(v - 1);
    std::sort(k.begin(), k.end());
    out.push_back(k);
  }
  return out;
}

CliqueSet sorted(CliqueSet cs) {
  std::sort(cs.begin(), cs.end());
  return cs;
}

Graph hub6() { return G(6, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {1, 5}, {5, 6}, {1, 6}}); }
Graph cycle4() { return G(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }
Graph grid_diag() {
  return G(9, {{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {2, 6}, {3, 6}, {4, 5}, {4, 7}, {4, 8},
               {5, 6}, {5, 8}, {5, 9}, {6, 9}, {7, 8}, {8, 9}});
}

// oracle: explicit check of every later-neighbour pair
bool brute_peo(const Graph& g, const Ordering& o) {
  auto pos = o.positions();
  for (int v = 0; v < g.n(); ++v)
    for (int a : g.adj(v))
      for (int b : g.adj(v))
        if (a < b && pos[a] > pos[v] && pos[b] > pos[v] && !g.has_edge(a, b)) return false;
  return true;
}

bool is_clique(const Graph& g, const Clique& c) {
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b)
      if (!g.has_edge(c[a], c[b])) return false;
  return true;
}

bool covers_edges(const Graph& g, const CliqueSet& cs) {
  for (auto [i, j] : g.edges()) {
    bool ok = false;
    for (const auto& c : cs)
      ok = ok || (std::binary_search(c.begin(), c.end(), i) && std::binary_search(c.begin(), c.end(), j));
    if (!ok) return false;
  }
  return true;
}

bool has_cip(const CliqueTree& ct) {
  const int t = static_cast<int>(ct.cliques.size());
  std::vector<std::vector<int>> adj(t);
  for (int k = 0; k < t; ++k)
    if (ct.parent[k] >= 0) {
      adj[k].push_back(ct.parent[k]);
      adj[ct.parent[k]].push_back(k);
    }
  for (int a = 0; a < t; ++a)
    for (int b = a + 1; b < t; ++b) {
      Clique inter;
      std::set_intersection(ct.cliques[a].begin(), ct.cliques[a].end(), ct.cliques[b].begin(),
                            ct.cliques[b].end(), std::back_inserter(inter));
      // path a -> b by DFS
      std::vector<int> prev(t, -2);
      std::vector<int> stack{a};
      prev[a] = -1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
          if (prev[w] == -2) {
            prev[w] = u;
            stack.push_back(w);
          }
      }
      if (prev[b] == -2) continue;  // different trees
      for (int u = b; u != -1; u = prev[u])
        if (!std::includes(ct.cliques[u].begin(), ct.cliques[u].end(), inter.begin(), inter.end()))
          return false;
    }
  return true;
}

}  // namespace

TEST(Mcs, Hub6GraphGivesPeo) {
  Graph g = hub6();
  Ordering o = mcs(g);
  EXPECT_TRUE(verify_peo(g, o));
  EXPECT_TRUE(verify_peo(g, O({2, 4, 6, 1, 3, 5})));
}

TEST(Mcs, CompleteGraphAnyOrderingIsPeo) {
  Graph g = Graph::complete(3);
  std::vector<int> p{0, 1, 2};
  do {
    EXPECT_TRUE(verify_peo(g, Ordering{p}));
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_TRUE(verify_peo(g, mcs(g)));
}

TEST(Mcs, FourCycleFails) {
  Graph g = cycle4();
  EXPECT_FALSE(verify_peo(g, mcs(g)));
  std::vector<int> p{0, 1, 2, 3};
  do {
    EXPECT_FALSE(verify_peo(g, Ordering{p}));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(VerifyPeo, ChainAndMismatch) {
  Graph chain = G(3, {{1, 2}, {2, 3}});
  EXPECT_TRUE(verify_peo(chain, O({1, 2, 3})));
  EXPECT_FALSE(verify_peo(chain, O({2, 1, 3})));
  EXPECT_THROW(verify_peo(chain, O({1, 2})), DimensionMismatch);
}

TEST(IsChordal, Examples) {
  EXPECT_FALSE(is_chordal(cycle4()));
  EXPECT_TRUE(is_chordal(G(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {2, 4}})));
  EXPECT_TRUE(is_chordal(G(6, {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}})));
  EXPECT_FALSE(is_chordal(grid_diag()));
}

TEST(ChordalExtension, FourCycleMinDegreeAddsOneChord) {
  Graph e = chordal_extension(cycle4(), ExtensionHeuristic::MinDegree);
  EXPECT_TRUE(is_chordal(e));
  EXPECT_EQ(e.num_edges(), 5u);
  EXPECT_TRUE(e.has_edge(0, 2) != e.has_edge(1, 3));
}

TEST(ChordalExtension, ChordalInputUnchangedUnderMcsFill) {
  Graph g = hub6();
  EXPECT_EQ(chordal_extension(g, ExtensionHeuristic::McsFill), g);
}

TEST(ChordalExtension, GridWithDiagonals) {
  Graph g = grid_diag();
  Graph full = chordal_extension(g, ExtensionHeuristic::CompleteComponents);
  for (auto h : {ExtensionHeuristic::McsFill, ExtensionHeuristic::MinDegree}) {
    Graph e = chordal_extension(g, h);
    EXPECT_TRUE(is_chordal(e));
    for (auto [i, j] : g.edges()) EXPECT_TRUE(e.has_edge(i, j));
    EXPECT_LE(e.num_edges(), full.num_edges());
  }
  EXPECT_TRUE(is_chordal(full));
  EXPECT_EQ(full.num_edges(), 36u);
}

TEST(ChordalExtension, CompleteComponentsPerComponent) {
  Graph g = G(5, {{1, 2}, {2, 3}, {4, 5}});
  Graph e = chordal_extension(g, ExtensionHeuristic::CompleteComponents);
  EXPECT_TRUE(e.has_edge(0, 2));
  EXPECT_FALSE(e.has_edge(0, 3));
  EXPECT_EQ(e.num_edges(), 4u);
}

TEST(MaximalCliques, Hub6) {
  CliqueSet cs = maximal_cliques(hub6(), O({2, 4, 6, 1, 3, 5}));
  EXPECT_EQ(cs, C({{1, 2, 3}, {3, 4, 5}, {1, 5, 6}, {1, 3, 5}}));
}

TEST(MaximalCliques, ChordalCycleAndChain) {
  Graph g = G(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {2, 4}});
  EXPECT_EQ(sorted(maximal_cliques(g, mcs(g))), sorted(C({{1, 2, 4}, {2, 3, 4}})));
  Graph chain = G(3, {{1, 2}, {2, 3}});
  EXPECT_EQ(sorted(maximal_cliques(chain, O({1, 2, 3}))), sorted(C({{1, 2}, {2, 3}})));
}

TEST(MaximalCliques, RejectsNonPeo) {
  EXPECT_THROW(maximal_cliques(cycle4(), O({1, 2, 3, 4})), NotPerfectOrdering);
}

// Regression for the "compare with the last clique only" reading of the clique search:
// triangle {1,2,3} plus pendant 4-1 with PEO (2,4,3,1).
TEST(MaximalCliques, PendantVertexPeo) {
  Graph g = G(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}});
  Ordering o = O({2, 4, 3, 1});
  ASSERT_TRUE(verify_peo(g, o));
  EXPECT_EQ(sorted(maximal_cliques(g, o)), sorted(C({{1, 2, 3}, {1, 4}})));
}

TEST(MaximalCliques, AgreesWithBronKerboschOnRandomChordal) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = gen::uniform_int(rng, 1, 25);
    Graph g = gen::random_chordal_graph(n, rng);
    ASSERT_TRUE(is_chordal(g));
    Ordering o = mcs(g);
    ASSERT_TRUE(brute_peo(g, o));
    CliqueSet cs = maximal_cliques(g, o);
    EXPECT_EQ(sorted(cs), all_maximal_cliques(g));
    for (const auto& c : cs) EXPECT_TRUE(is_clique(g, c));
    EXPECT_TRUE(covers_edges(g, cs));
    if (connected_components(g).size() == 1) {
      EXPECT_LE(static_cast<int>(cs.size()), std::max(1, n - 1));
    }
  }
}

TEST(VerifyPeo, MatchesBruteForceOnRandomOrders) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    int n = gen::uniform_int(rng, 1, 9);
    Graph g = trial % 2 ? gen::random_graph(n, 0.4, rng) : gen::random_chordal_graph(n, rng);
    Ordering o = Ordering::identity(n);
    std::shuffle(o.perm.begin(), o.perm.end(), rng);
    EXPECT_EQ(verify_peo(g, o), brute_peo(g, o));
  }
}

TEST(ChordalExtension, AlwaysChordalOnRandomGraphs) {
  gen::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = gen::random_graph(gen::uniform_int(rng, 1, 20), 0.25, rng);
    for (auto h : {ExtensionHeuristic::McsFill, ExtensionHeuristic::MinDegree,
                   ExtensionHeuristic::CompleteComponents}) {
      Graph e = chordal_extension(g, h);
      EXPECT_TRUE(is_chordal(e));
      for (auto [i, j] : g.edges()) EXPECT_TRUE(e.has_edge(i, j));
    }
  }
}

TEST(CliqueTree, Hub6CentralClique) {
  CliqueTree ct = clique_tree(C({{1, 2, 3}, {3, 4, 5}, {1, 5, 6}, {1, 3, 5}}));
  EXPECT_TRUE(ct.connected());
  // clique 4 adjacent to the other three
  int deg = 0;
  for (int k = 0; k < 4; ++k) deg += (ct.parent[k] == 3) + (k == 3 && ct.parent[k] >= 0);
  EXPECT_EQ(deg, 3);
  EXPECT_TRUE(has_cip(ct));
}

TEST(CliqueTree, SingleAndForest) {
  CliqueTree one = clique_tree(C({{1, 2, 3}}));
  EXPECT_EQ(one.roots.size(), 1u);
  EXPECT_EQ(one.parent[0], -1);
  CliqueTree forest = clique_tree(C({{1, 2}, {3, 4}}));
  EXPECT_EQ(forest.roots.size(), 2u);
  EXPECT_FALSE(forest.connected());
}

// oracle: enumerate all spanning trees of the clique graph (t <= 5) by edge subsets
TEST(CliqueTree, ChainMatchesBruteForceMaximumWeight) {
  CliqueSet cs = C({{1, 2}, {2, 3}, {3, 4}});
  CliqueTree ct = clique_tree(cs);
  auto weight = [&](int a, int b) {
    Clique i;
    std::set_intersection(cs[a].begin(), cs[a].end(), cs[b].begin(), cs[b].end(), std::back_inserter(i));
    return static_cast<int>(i.size());
  };
  std::vector<std::pair<int, int>> pairs{{0, 1}, {0, 2}, {1, 2}};
  int best = -1;
  for (int mask = 0; mask < 8; ++mask) {
    if (__builtin_popcount(mask) != 2) continue;
    int w = 0;
    for (int e = 0; e < 3; ++e)
      if (mask >> e & 1) w += weight(pairs[e].first, pairs[e].second);
    best = std::max(best, w);
  }
  int got = 0;
  for (int k = 0; k < 3; ++k)
    if (ct.parent[k] >= 0) got += weight(k, ct.parent[k]);
  EXPECT_EQ(got, best);
  std::set<Clique> seps;
  for (int k = 0; k < 3; ++k)
    if (ct.parent[k] >= 0) seps.insert(ct.separators[k]);
  EXPECT_EQ(seps, (std::set<Clique>{{1}, {2}}));
}

TEST(CliqueTree, CipOnRandomChordal) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = gen::random_chordal_graph(gen::uniform_int(rng, 2, 16), rng);
    CliqueSet cs = maximal_cliques(g);
    if (cs.size() > 12) continue;
    CliqueTree ct = clique_tree(cs);
    EXPECT_TRUE(has_cip(ct));
    EXPECT_EQ(ct.roots.size(), connected_components(g).size());
  }
}

TEST(MergeCliques, Thresholds) {
  CliqueSet cs = C({{1, 2}, {2, 3}});
  EXPECT_EQ(merge_cliques(clique_tree(cs)), cs);
  EXPECT_EQ(merge_cliques(clique_tree(cs), 0.0), C({{1, 2, 3}}));
  CliqueSet b = C({{1, 2, 3}, {3, 4, 5}, {1, 5, 6}, {1, 3, 5}});
  CliqueSet m = merge_cliques(clique_tree(b), 1.0);
  EXPECT_TRUE(covers_edges(hub6(), m));
  EXPECT_THROW(merge_cliques(clique_tree(b), -1.0), std::invalid_argument);
}

TEST(LiftPartition, Examples) {
  auto k3 = lift_partition_graph(G(2, {{1, 2}}), Partition({2, 1}));
  EXPECT_EQ(k3.graph, Graph::complete(3));
  Partition p({1, 2, 1});
  auto chain = lift_partition_graph(G(3, {{1, 2}, {2, 3}}), p);
  EXPECT_EQ(p.lift({0, 1}), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(is_chordal(chain.graph));
  EXPECT_THROW(lift_partition_graph(G(2, {{1, 2}}), p), DimensionMismatch);
}

TEST(LiftPartition, GridPartitionsAreChordal) {
  Graph g = grid_diag();
  for (auto sizes : {std::vector<int>{3, 3, 3}, std::vector<int>{2, 1, 1, 2, 2, 1}}) {
    Partition part(sizes);
    // block graph: blocks adjacent when any scalar entry couples them
    std::vector<std::pair<int, int>> be;
    for (auto [i, j] : g.edges()) {
      int bi = 0, bj = 0;
      while (part.offset(bi + 1) <= i) ++bi;
      while (part.offset(bj + 1) <= j) ++bj;
      if (bi != bj) be.emplace_back(bi, bj);
    }
    auto lifted = lift_partition_graph(Graph::from_edges(part.blocks(), be), part);
    EXPECT_TRUE(is_chordal(lifted.graph));
    for (auto [i, j] : g.edges()) EXPECT_TRUE(lifted.graph.has_edge(i, j));
  }
}

TEST(Partition, Refines) {
  EXPECT_TRUE(partition_refines(Partition({2, 2, 2}), Partition({4, 2})));
  EXPECT_TRUE(partition_refines(Partition::unit(6), Partition({2, 2, 2})));
  EXPECT_FALSE(partition_refines(Partition({3, 3}), Partition({2, 4})));
  EXPECT_TRUE(partition_refines(Partition({3, 3}), Partition({3, 3})));
  EXPECT_THROW(partition_refines(Partition({3, 3}), Partition({2, 2})), DimensionMismatch);
  EXPECT_EQ(Partition::parse("2,1,1,1"), Partition({2, 1, 1, 1}));
}

TEST(GraphIo, RoundTripAndErrors) {
  std::istringstream in("# chain\n3 2\n1 2\n2 3\n");
  Graph g = read_graph(in);
  EXPECT_EQ(g, G(3, {{1, 2}, {2, 3}}));
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(out.str(), "3 2\n1 2\n2 3\n");
  std::istringstream bad("3 2\n1 2\n3 2\n");
  try {
    read_graph(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
  }
  std::istringstream dup("2 2\n1 2\n1 2\n");
  EXPECT_THROW(read_graph(dup), ParseError);
}
