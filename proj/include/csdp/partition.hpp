#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csdp/graph.hpp"

namespace csdp {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> sizes);
  static Partition unit(int n) { return Partition(std::vector<int>(n, 1)); }
  // "2,1,1" style
  static Partition parse(const std::string& s);

  int blocks() const { return static_cast<int>(sizes_.size()); }
  int n() const { return offsets_.empty() ? 0 : offsets_.back(); }
  int size(int i) const { return sizes_[i]; }
  int offset(int i) const { return offsets_[i]; }
  const std::vector<int>& sizes() const { return sizes_; }
  // scalar indices of block i
  std::vector<int> indices(int i) const;
  // scalar indices of a block clique
  std::vector<int> lift(const std::vector<int>& block_clique) const;

  bool operator==(const Partition& o) const { return sizes_ == o.sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;  // length blocks()+1
};

// fine ⊏ coarse: every coarse block is a contiguous run of fine blocks.
bool partition_refines(const Partition& fine, const Partition& coarse);

struct LiftedGraph {
  Graph graph;
  std::vector<std::vector<int>> block_indices;
};

LiftedGraph lift_partition_graph(const Graph& g, const Partition& part);
CliqueSet lift_cliques(const CliqueSet& cs, const Partition& part);
// Expand a block elimination order into a scalar one (blocks kept contiguous).
Ordering lift_ordering(const Ordering& ord, const Partition& part);

}  // namespace csdp
