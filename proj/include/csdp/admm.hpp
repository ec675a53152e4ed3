#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "csdp/kernels.hpp"
#include "csdp/sdp.hpp"

namespace csdp {

struct AdmmSettings {
  double rho = 1.0;
  double eps_abs = 1e-5;
  double eps_rel = 1e-5;
  int max_iter = 20000;
  bool adaptive_rho = false;
  int check_every = 25;
  bool complete_primal = false;  // max-det completion of the returned X
  int threads = 0;               // 0 keeps the OpenMP default
  Exec exec = Exec::Parallel;
  std::ostream* log = nullptr;   // CSV iteration log
  // throws std::invalid_argument
  void validate() const;
};

enum class SolveStatus { Solved, MaxIter };
const char* to_string(SolveStatus s);

struct AdmmState {
  SparseSymMatrix X;               // domain: global variable; range: primal estimate ξ
  Vec y;                           // range: dual variable; domain: recovered multipliers
  std::vector<Mat> clique_vars;    // X_k (domain) or Z_k (range)
  std::vector<Mat> multipliers;    // Λ_k, scaled by 1/ρ
  int iter = 0;
};

struct IterationRecord {
  int iter;
  double primal_res, dual_res, objective, rho;
};

struct Solution {
  SolveStatus status = SolveStatus::MaxIter;
  double objective = 0.0;  // ⟨C,X⟩ in domain mode, bᵀy in range mode
  double primal_res = 0.0;
  double dual_res = 0.0;
  double rho = 1.0;        // final penalty
  AdmmState state;
  std::optional<Mat> X_completed;
  std::vector<IterationRecord> history;
};

Solution solve_domain(const DecomposedSdp& d, const AdmmSettings& s = {});
Solution solve_range(const DecomposedSdp& d, const AdmmSettings& s = {});
// Dispatches on d.mode.
Solution solve(const DecomposedSdp& d, const AdmmSettings& s = {});

}  // namespace csdp
