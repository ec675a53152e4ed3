#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csdp/graph.hpp"
#include "csdp/partition.hpp"
#include "csdp/sparse_matrix.hpp"

namespace csdp {

// Primal  min ⟨C,X⟩ s.t. ⟨A_i,X⟩ = b_i, X ⪰ 0
// Dual    max bᵀy   s.t. C − Σ y_i A_i ⪰ 0
struct SdpProblem {
  int n = 0;
  SparseSymMatrix C;
  std::vector<SparseSymMatrix> A;
  Vec b;
  // Diagonal block sizes; negative entries are diagonal (LP) blocks. Empty means {n}.
  std::vector<int> block_structure;

  int m() const { return static_cast<int>(A.size()); }
  std::vector<int> blocks() const { return block_structure.empty() ? std::vector<int>{n} : block_structure; }
  // throws DimensionMismatch on inconsistent sizes
  void validate() const;
};

// Value equality ignoring explicitly stored zeros.
bool same_data(const SdpProblem& a, const SdpProblem& b);

enum class DecompositionMode { Domain, Range };

struct DecomposedSdp {
  SdpProblem base;
  SparsityPattern pattern;  // chordal extension of the aggregate pattern
  CliqueSet cliques;
  CliqueTree tree;
  DecompositionMode mode = DecompositionMode::Domain;
};

struct ConvertedSdp {
  std::vector<int> cone_sizes;
  SdpProblem data;                    // block diagonal over cone_sizes
  std::vector<int> consistency_rows;  // row indices of overlap equalities in data.A
  CliqueSet cliques;
  CliqueTree tree;
  int original_rows = 0;              // rows [0, original_rows) are the A_i of the base
};

SparsityPattern aggregate_pattern(const SdpProblem& p);
DecomposedSdp domain_decompose(const SdpProblem& p, ExtensionHeuristic ext = ExtensionHeuristic::MinDegree);
DecomposedSdp range_decompose(const SdpProblem& p, ExtensionHeuristic ext = ExtensionHeuristic::MinDegree);
ConvertedSdp clique_tree_convert(const SdpProblem& p, ExtensionHeuristic ext, bool drop_redundant);

// Maps a block-diagonal solution of a converted problem back to the pattern.
SparseSymMatrix assemble_from_cliques(const ConvertedSdp& c, const std::vector<Mat>& blocks, int n);

struct Presolved {
  SdpProblem problem;
  std::vector<int> kept;     // original indices of kept rows
  std::vector<int> dropped;  // dependent rows removed
};
// Drops linearly dependent rows; throws Error when a dropped row is inconsistent.
Presolved remove_dependent_rows(const SdpProblem& p, double tol = 1e-9);
// Dependent rows only, for diagnostics.
std::vector<int> dependent_rows(const SdpProblem& p, double tol = 1e-9);

// SDPA sparse format. File optimum is −(max bᵀy): A_i = −F_i, C = −F_0, b = −c.
void sdpa_write(std::ostream& out, const SdpProblem& p);
void sdpa_write_file(const std::string& path, const SdpProblem& p);
SdpProblem sdpa_read(std::istream& in);
SdpProblem sdpa_read_file(const std::string& path);

// QCQP data: index 0 is the objective, rows 1..m are constraints
// xᵀP_i x + 2q_iᵀx + r_i ≤ 0 (or = 0 when equality[i]).
struct QcqpData {
  int n = 0;
  std::vector<Mat> P;
  std::vector<Vec> q;
  std::vector<double> r;
  std::vector<bool> equality;  // same length as P; entry 0 ignored
};
SdpProblem qcqp_relax(const QcqpData& d);

SdpProblem gen_maxcut(const Mat& W);

// Block entries A_ij of the network system, 0-based block indices.
using BlockSystem = std::map<std::pair<int, int>, Mat>;
// Unit margins: P ⪰ I, −(AᵀP + PA) ⪰ I. The LMI is homogeneous in P, so this is
// feasible exactly when the ε-margin version is, for any ε > 0.
SdpProblem gen_lyapunov(const BlockSystem& blocks, const Graph& network, const Partition& block_sizes,
                        double margin = 1.0);
Mat assemble_block_system(const BlockSystem& blocks, const Partition& block_sizes);

// Randomized generators used by the CLI and tests; all take a seed.
Mat random_maxcut_weights(int n, double density, std::uint64_t seed);
struct NetworkInstance {
  BlockSystem blocks;
  Graph network;
  Partition sizes;
};
enum class NetworkShape { Star, Chain, Cycle };
// Diagonal blocks are shifted to be strongly stable; couplings scaled by `coupling`.
NetworkInstance random_network(NetworkShape shape, int l, int max_block, double coupling,
                               std::uint64_t seed, bool unstable_hub = false);
QcqpData random_qcqp(int n, int m, std::uint64_t seed);

}  // namespace csdp
