#pragma once

#include <optional>
#include <vector>

#include "csdp/admm.hpp"
#include "csdp/partition.hpp"
#include "csdp/sdp.hpp"

namespace csdp {

struct FwStructure {
  enum class Mode { WidthK, Block2 };
  int n = 0;
  Mode mode = Mode::WidthK;
  int k = 2;              // WidthK
  Partition partition;    // Block2
  CliqueSet cliques;      // lexicographic
};

constexpr long kMaxFwCliques = 20000;

// All k-subsets of {0..n-1}; throws DimensionMismatch for k > n and Error above kMaxFwCliques.
FwStructure fw_cliques(int n, int k);
// Pairwise block unions. A single-block partition gives the one clique {0..n-1}.
FwStructure fw_cliques(const Partition& part);

enum class FwStatus { Feasible, Infeasible, Unknown };
const char* to_string(FwStatus s);

struct CliqueSumResult {
  FwStatus status = FwStatus::Unknown;
  std::vector<Mat> terms;      // PSD X_k with Σ inflate(X_k) ≈ Z (Feasible)
  double residual = 0.0;       // max |Σ inflate(X_k) − Z|
  std::optional<Mat> separator;  // Y with clique blocks PSD and ⟨Y,Z⟩ < 0 (Infeasible)
  Solution solve;              // raw ADMM result
};

// Is Z a sum of PSD matrices supported on the given cliques? Solved by ADMM on
// the block-diagonal form; both answers come with a checked certificate.
CliqueSumResult clique_sum_membership(const Mat& Z, const CliqueSet& cs, const AdmmSettings& s);
AdmmSettings membership_settings();
CliqueSumResult fw_membership(const Mat& Z, const FwStructure& fw, const AdmmSettings& s = membership_settings());

struct DualCheck {
  bool feasible = false;
  std::vector<double> min_eigs;
};
DualCheck fw_dual_check(const Mat& Z, const FwStructure& fw, Exec exec = Exec::Parallel);

enum class BoundSide { Upper, Lower };
struct BoundProgram {
  SdpProblem program;          // block diagonal over cliques
  CliqueSet cliques;
  std::vector<int> consistency_rows;  // lower side only
};
// Upper: X ∈ FW through X = Σ inflate(X_k). Lower: X in the dual cone, i.e. every
// clique block of X PSD, with overlaps tied by chained equality rows.
BoundProgram fw_bound_program(const SdpProblem& p, const FwStructure& fw, BoundSide side);
// Back to an n×n matrix: Σ inflate(X_k) for Upper, owner entries for Lower.
Mat fw_recover(const BoundProgram& bp, const std::vector<Mat>& blocks, BoundSide side, int n);

}  // namespace csdp
