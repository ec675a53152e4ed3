#include "csdp/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "csdp/errors.hpp"

namespace csdp {

Partition::Partition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  offsets_.assign(sizes_.size() + 1, 0);
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1) throw std::invalid_argument("partition entries must be positive");
    offsets_[i + 1] = offsets_[i] + sizes_[i];
  }
}

Partition Partition::parse(const std::string& s) {
  std::vector<int> sizes;
  std::string tok;
  std::istringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad partition entry: " + tok);
    sizes.push_back(v);
  }
  return Partition(std::move(sizes));
}

std::vector<int> Partition::indices(int i) const {
  std::vector<int> out(sizes_[i]);
  std::iota(out.begin(), out.end(), offsets_[i]);
  return out;
}

std::vector<int> Partition::lift(const std::vector<int>& block_clique) const {
  std::vector<int> out;
  for (int b : block_clique) {
    if (b < 0 || b >= blocks()) throw DimensionMismatch("block index out of range");
    for (int k = offsets_[b]; k < offsets_[b + 1]; ++k) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool partition_refines(const Partition& fine, const Partition& coarse) {
  if (fine.n() != coarse.n()) throw DimensionMismatch("partitions of different totals");
  // every coarse boundary must also be a fine boundary
  std::size_t f = 0;
  for (int c = 0; c <= coarse.blocks(); ++c) {
    int target = coarse.offset(c);
    while (f <= static_cast<std::size_t>(fine.blocks()) && fine.offset(static_cast<int>(f)) < target) ++f;
    if (f > static_cast<std::size_t>(fine.blocks()) || fine.offset(static_cast<int>(f)) != target)
      return false;
  }
  return true;
}

LiftedGraph lift_partition_graph(const Graph& g, const Partition& part) {
  if (g.n() != part.blocks()) throw DimensionMismatch("graph has " + std::to_string(g.n()) +
                                                      " vertices but partition has " +
                                                      std::to_string(part.blocks()) + " blocks");
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < part.blocks(); ++b) {
    auto idx = part.indices(b);
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t c = a + 1; c < idx.size(); ++c) edges.emplace_back(idx[a], idx[c]);
  }
  for (auto [i, j] : g.edges())
    for (int a : part.indices(i))
      for (int c : part.indices(j)) edges.emplace_back(a, c);
  LiftedGraph out{Graph::from_edges(part.n(), edges), {}};
  for (int b = 0; b < part.blocks(); ++b) out.block_indices.push_back(part.indices(b));
  return out;
}

CliqueSet lift_cliques(const CliqueSet& cs, const Partition& part) {
  CliqueSet out;
  for (const auto& c : cs) out.push_back(part.lift(c));
  return out;
}

Ordering lift_ordering(const Ordering& ord, const Partition& part) {
  if (ord.size() != part.blocks()) throw DimensionMismatch("ordering/partition size mismatch");
  Ordering out;
  for (int b : ord.perm)
    for (int k : part.indices(b)) out.perm.push_back(k);
  return out;
}

}  // namespace csdp
