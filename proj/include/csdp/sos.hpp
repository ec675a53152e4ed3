#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csdp/admm.hpp"
#include "csdp/graph.hpp"
#include "csdp/partition.hpp"
#include "csdp/polynomial.hpp"
#include "csdp/sparse_matrix.hpp"

namespace csdp {

// K = {x : g_i(x) ≥ 0}. Optional ball radii r_k add r_k² − ‖x_{J_k}‖² ≥ 0 per
// csp clique in sparse weighted assembly.
struct SemialgebraicSet {
  std::vector<Polynomial> g;
  std::vector<double> radii;
};

// One PSD block of a Gram program. Index p of the block is the pair
// (matrix_rows[p / |monomials|], monomials[p % |monomials|]); scalar programs
// leave matrix_rows empty.
struct GramBlock {
  ExponentSet monomials;
  std::vector<int> matrix_rows;
  int weight = 0;   // 0 is the constant 1, i > 0 is g_i
  int clique = -1;  // variable, basis or row clique the block came from
  int size() const {
    return static_cast<int>(monomials.size()) * std::max<int>(1, static_cast<int>(matrix_rows.size()));
  }
};

struct GramTerm {
  int block, p, q;  // p ≤ q
  double coef;      // contributes coef·S_block(p,q)
};

// Coefficient of x^alpha in entry (i,j) of the certified expression.
struct GramRow {
  int i = 0, j = 0;
  Exponent alpha;
  mpq_class target;
  std::vector<GramTerm> terms;
};

struct GramSdp {
  int n = 0;                  // polynomial variables
  ExponentSet basis;          // shared basis of plain Gram programs
  SparsityPattern sparsity;   // over basis indices (plain Gram programs)
  CliqueSet cliques;          // over basis indices (plain Gram programs)
  std::vector<GramBlock> blocks;
  std::vector<GramRow> rows;  // sorted by (i, j, alpha)
  double target_scale = 0.0;  // max |target|

  std::vector<int> block_sizes() const;
};

// f = Σ_k (E_{C_k} x^B)ᵀ S_k (E_{C_k} x^B) with one block per clique. Rows cover
// every α ∈ ∪(C_k + C_k); α ∉ supp(f) gets target 0. Throws SupportNotCovered.
GramSdp gram_sdp(const Polynomial& f, const ExponentSet& B, const CliqueSet& cliques);
// Cliques from the pattern: maximal cliques when chordal, Bron–Kerbosch otherwise.
GramSdp gram_sdp(const Polynomial& f, const ExponentSet& B, const SparsityPattern& edges);
CliqueSet pattern_cliques(const SparsityPattern& p);

struct GramSolveSettings {
  int dense_max_block = 12;  // larger blocks go through the ADMM solver
  int max_iter = 20000;      // Douglas–Rachford iterations
  double rel_tol = 1e-6;     // feasible iff residual ≤ rel_tol·(1 + ‖f‖∞)
  AdmmSettings admm = [] {
    AdmmSettings s;
    s.eps_abs = s.eps_rel = 1e-9;
    s.max_iter = 50000;
    return s;
  }();
  Exec exec = Exec::Parallel;
};

enum class SosStatus { Feasible, Infeasible };
const char* to_string(SosStatus s);

struct GramSolution {
  SosStatus status = SosStatus::Infeasible;
  std::vector<Mat> S;      // PSD by construction
  double residual = 0.0;   // max over rows |Σ coef·S − target|
  double tolerance = 0.0;
  int iterations = 0;
  std::string method;      // "douglas-rachford" or "admm"
};

GramSolution solve_gram(const GramSdp& g, const GramSolveSettings& s = {});
double gram_residual(const GramSdp& g, const std::vector<Mat>& S);
// σ per scalar block: Σ_{p,q} S_pq x^{β_p+β_q} (weights g_i not applied).
std::vector<std::map<Exponent, double>> sigma_terms(const GramSdp& g, const std::vector<Mat>& S);

// Edge (i,j) when some exponent couples x_i and x_j.
Graph csp_graph(const ExponentSet& A, int n);
// Joint graph: condition (a) from f's monomials, (b) every pair in var(g_i).
Graph csp_graph(const Polynomial& f, const std::vector<Polynomial>& g = {});
// C_k = {β ∈ B : nnz(β) ⊆ J_k}, as indices into B.
CliqueSet csp_cliques(const ExponentSet& B, const CliqueSet& var_cliques);
// Edges (β,γ) with nnz(β+γ) inside one variable clique.
SparsityPattern csp_edges(const ExponentSet& B, const CliqueSet& var_cliques);

enum class TssosExtension { Block, Chordal };

// [E_1, …, E_K] with E_{K+1} = E_K. Block completes connected components,
// Chordal uses the min-degree extension. max_iter 0 means |B|².
std::vector<SparsityPattern> tssos_edges(const ExponentSet& A, const ExponentSet& B, TssosExtension ext,
                                         int max_iter = 0);

struct CsTssos {
  ExponentSet basis;       // B with csp-violating exponents removed
  CliqueSet var_cliques;   // cliques of the (extended) csp graph
  std::vector<SparsityPattern> steps;  // E_k ∩ E_csp over basis indices
};
// Nonchordal csp graphs are extended with min-degree first.
CsTssos cs_tssos_edges(const ExponentSet& A, const ExponentSet& B, TssosExtension ext, const Graph& csp,
                       int max_iter = 0);

enum class SosStrategy { Dense, Newton, Csp, Tssos, ChordalTssos, CsTssos };
SosStrategy parse_strategy(const std::string& s);
const char* to_string(SosStrategy s);

struct SosOptions {
  SosStrategy strategy = SosStrategy::Newton;
  bool use_newton = true;  // dense ignores it and uses N^n_d
  int level = 0;           // hierarchy step, 1-based; 0 takes the stabilized one
  GramSolveSettings solver;
};

struct SosResult {
  SosStatus status = SosStatus::Infeasible;
  ExponentSet basis;
  CliqueSet cliques;
  std::vector<int> block_sizes;
  int levels = 0;        // hierarchy length for the TSSOS strategies
  int level = 0;         // step used
  double residual = 0.0;
  GramSolution solve;
  std::vector<std::map<Exponent, double>> sigma;
};

// Throws Error for odd degree.
SosResult sos_check(const Polynomial& f, const SosOptions& opt = {});

// f = Σ_i g_i σ_i with g_0 = 1 and σ_i on N^n_{ω − ⌈deg g_i / 2⌉}. Sparse mode
// splits every σ_i over the cliques J_k of the joint csp graph (min-degree
// extension when needed) with var(g_i) ⊆ J_k; var_cliques overrides them.
GramSdp weighted_sos_assemble(const Polynomial& f, const SemialgebraicSet& K, int omega, bool sparse,
                              const std::optional<CliqueSet>& var_cliques = std::nullopt);

using PolyMatrix = std::vector<std::vector<Polynomial>>;
enum class MatrixMultiplier { NormPower, OnePlusNorm };

// Global: w(x)·P = Σ_k E_kᵀ S_k(x) E_k with w = ‖x‖^{2ν} or (1 + ‖x‖²)^ν and S_k
// SOS matrices on N^n_{d+ν}. With K: P = Σ_k E_kᵀ (S_{0,k} + Σ_i g_i S_{i,k}) E_k,
// S_{i,k} on N^n_{ν − ⌈deg g_i / 2⌉}. Throws NotChordal, ConstraintOutsideClique,
// std::invalid_argument for asymmetric P.
GramSdp matrix_sos_assemble(const PolyMatrix& P, const CliqueSet& cliques, int nu, MatrixMultiplier mult,
                            const std::optional<SemialgebraicSet>& K = std::nullopt);

// α-SDSOS: Gram matrix on B restricted to block factor-width two over the partition.
GramSdp sdsos_gram_constraint(const Polynomial& f, const ExponentSet& B, const Partition& part);

}  // namespace csdp
