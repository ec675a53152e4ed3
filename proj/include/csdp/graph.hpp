#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace csdp {

// Vertices are 0-based in memory; text formats are 1-based.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  // Duplicates are merged, self loops dropped.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  static Graph complete(int n);

  int n() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& adj(int v) const { return adj_[v]; }
  bool has_edge(int i, int j) const;
  std::size_t num_edges() const;
  // i<j, lexicographic
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  std::vector<std::vector<int>> adj_;
};

// perm[i] is the vertex eliminated at step i.
struct Ordering {
  std::vector<int> perm;

  int size() const { return static_cast<int>(perm.size()); }
  std::vector<int> positions() const;
  static Ordering identity(int n);
  bool is_permutation() const;
};

using Clique = std::vector<int>;  // sorted
using CliqueSet = std::vector<Clique>;

struct CliqueTree {
  CliqueSet cliques;
  std::vector<int> parent;            // -1 for roots
  std::vector<Clique> separators;     // separators[k] = cliques[k] ∩ cliques[parent[k]]
  std::vector<int> roots;

  bool connected() const { return roots.size() <= 1; }
  // every parent precedes its children
  std::vector<int> preorder() const;
  std::vector<std::vector<int>> children() const;
};

enum class ExtensionHeuristic { McsFill, MinDegree, CompleteComponents };

ExtensionHeuristic parse_heuristic(const std::string& s);
std::string to_string(ExtensionHeuristic h);

Ordering mcs(const Graph& g);
bool verify_peo(const Graph& g, const Ordering& ord);
bool is_chordal(const Graph& g);
Graph chordal_extension(const Graph& g, ExtensionHeuristic h);
// Elimination with the given order; returns the filled graph.
Graph eliminate(const Graph& g, const Ordering& ord);
Ordering min_degree_order(const Graph& g);

CliqueSet maximal_cliques(const Graph& g, const Ordering& ord);
// Convenience: mcs + maximal_cliques; throws NotChordal for nonchordal g.
CliqueSet maximal_cliques(const Graph& g);
// Bron–Kerbosch with pivoting; any graph, meant for small ones.
CliqueSet all_maximal_cliques(const Graph& g);

CliqueTree clique_tree(const CliqueSet& cs);
CliqueSet merge_cliques(const CliqueTree& ct,
                        double threshold = std::numeric_limits<double>::infinity());

std::vector<std::vector<int>> connected_components(const Graph& g);

Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace csdp
