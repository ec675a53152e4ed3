#include "csdp/factor_width.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csdp/errors.hpp"
#include "csdp/kernels.hpp"

namespace csdp {

const char* to_string(FwStatus s) {
  switch (s) {
    case FwStatus::Feasible: return "feasible";
    case FwStatus::Infeasible: return "infeasible";
    case FwStatus::Unknown: return "unknown";
  }
  return "unknown";
}

FwStructure fw_cliques(int n, int k) {
  if (k < 1 || n < 1) throw DimensionMismatch("factor width needs n >= 1 and k >= 1");
  if (k > n) throw DimensionMismatch("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  // C(n,k) without overflow, stopping at the cap
  long count = 1;
  for (int i = 1; i <= k && count <= kMaxFwCliques; ++i) count = count * (n - k + i) / i;
  if (count > kMaxFwCliques)
    throw Error("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds " + std::to_string(kMaxFwCliques) +
                " cliques; use a block partition instead");
  FwStructure fw;
  fw.n = n;
  fw.k = k;
  fw.mode = FwStructure::Mode::WidthK;
  Clique c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fw.cliques.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return fw;
}

FwStructure fw_cliques(const Partition& part) {
  FwStructure fw;
  fw.n = part.n();
  fw.mode = FwStructure::Mode::Block2;
  fw.partition = part;
  if (part.blocks() == 1) {
    fw.cliques.push_back(part.indices(0));
    return fw;
  }
  for (int i = 0; i < part.blocks(); ++i)
    for (int j = i + 1; j < part.blocks(); ++j) fw.cliques.push_back(part.lift({i, j}));
  return fw;
}

namespace {

void check_symmetric(const Mat& Z) {
  if (Z.rows() != Z.cols()) throw DimensionMismatch("matrix must be square");
  if ((Z - Z.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, max_abs(Z)))
    throw std::invalid_argument("matrix must be symmetric");
}

bool contains(const Clique& c, int v) { return std::binary_search(c.begin(), c.end(), v); }

int local_index(const Clique& c, int v) {
  return static_cast<int>(std::lower_bound(c.begin(), c.end(), v) - c.begin());
}

std::vector<int> offsets(const CliqueSet& cs) {
  std::vector<int> off{0};
  for (const auto& c : cs) off.push_back(off.back() + static_cast<int>(c.size()));
  return off;
}

// A separating Y must have PSD clique blocks and ⟨Y,Z⟩ < 0.
bool separates(const Mat& Y, const Mat& Z, const CliqueSet& cs) {
  double scale = std::max(1e-300, max_abs(Y));
  std::vector<Mat> blocks;
  for (const auto& c : cs) blocks.push_back(extract(Y, c));
  for (double e : min_eigenvalues(blocks, Exec::Parallel))
    if (e < -1e-9 * scale) return false;
  double ip = Y.cwiseProduct(Z).sum();
  return ip < -1e-6 * Y.norm() * std::max(1.0, Z.norm());
}

}  // namespace

AdmmSettings membership_settings() {
  AdmmSettings s;
  s.eps_abs = 1e-10;
  s.eps_rel = 1e-10;
  s.max_iter = 20000;
  return s;
}

CliqueSumResult clique_sum_membership(const Mat& Z, const CliqueSet& cs, const AdmmSettings& s) {
  check_symmetric(Z);
  const int n = static_cast<int>(Z.rows());
  CliqueSumResult out;
  // entries no clique covers must vanish
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      bool covered = std::any_of(cs.begin(), cs.end(), [&](const Clique& c) { return contains(c, i) && contains(c, j); });
      if (!covered && Z(i, j) != 0.0) {
        Mat Y = Mat::Zero(n, n);
        Y(i, j) = Y(j, i) = Z(i, j) > 0 ? -1.0 : 1.0;
        out.status = FwStatus::Infeasible;
        out.separator = Y;
        return out;
      }
    }
  auto off = offsets(cs);
  const int N = off.back();
  SdpProblem p;
  p.n = N;
  for (const auto& c : cs) p.block_structure.push_back(static_cast<int>(c.size()));
  p.C = SparseSymMatrix(N);
  std::vector<std::pair<int, int>> rows;
  std::vector<double> b;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<std::tuple<int, int, double>> t;
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (contains(cs[k], i) && contains(cs[k], j))
          t.emplace_back(off[k] + local_index(cs[k], i), off[k] + local_index(cs[k], j), i == j ? 1.0 : 0.5);
      if (t.empty()) continue;
      p.A.push_back(SparseSymMatrix::from_triplets(N, t));
      rows.emplace_back(i, j);
      b.push_back(Z(i, j));
    }
  p.b = Eigen::Map<Vec>(b.data(), static_cast<Eigen::Index>(b.size()));
  auto d = domain_decompose(p);
  out.solve = solve_domain(d, s);
  out.terms = out.solve.state.clique_vars;

  Mat sum = Mat::Zero(n, n);
  for (std::size_t k = 0; k < cs.size(); ++k) inflate_add(sum, out.terms[k], cs[k]);
  out.residual = (sum - Z).cwiseAbs().maxCoeff();
  if (out.solve.status == SolveStatus::Solved && out.residual <= 1e-8 * std::max(1.0, max_abs(Z))) {
    out.status = FwStatus::Feasible;
    return out;
  }
  // candidate separators: the displacement Σ inflate(X_k) − Z, and the dual ray
  std::vector<Mat> cands{sum - Z};
  Mat Y = Mat::Zero(n, n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto [i, j] = rows[r];
    double v = out.solve.state.y[static_cast<Eigen::Index>(r)];
    if (i == j) Y(i, i) = v;
    else Y(i, j) = Y(j, i) = 0.5 * v;
  }
  cands.push_back(-Y);
  cands.push_back(Y);
  for (const auto& c : cands)
    if (separates(c, Z, cs)) {
      out.status = FwStatus::Infeasible;
      out.separator = c;
      return out;
    }
  out.status = FwStatus::Unknown;
  return out;
}

CliqueSumResult fw_membership(const Mat& Z, const FwStructure& fw, const AdmmSettings& s) {
  if (Z.rows() != fw.n) throw DimensionMismatch("matrix size does not match the factor-width structure");
  return clique_sum_membership(Z, fw.cliques, s);
}

DualCheck fw_dual_check(const Mat& Z, const FwStructure& fw, Exec exec) {
  check_symmetric(Z);
  if (Z.rows() != fw.n) throw DimensionMismatch("matrix size does not match the factor-width structure");
  std::vector<Mat> blocks;
  for (const auto& c : fw.cliques) blocks.push_back(extract(Z, c));
  DualCheck out;
  out.min_eigs = min_eigenvalues(blocks, exec);
  double tol = psd_tolerance(Z);
  out.feasible = std::all_of(out.min_eigs.begin(), out.min_eigs.end(), [&](double e) { return e >= -tol; });
  return out;
}

BoundProgram fw_bound_program(const SdpProblem& p, const FwStructure& fw, BoundSide side) {
  p.validate();
  if (p.n != fw.n) throw DimensionMismatch("problem size does not match the factor-width structure");
  BoundProgram out;
  out.cliques = fw.cliques;
  const auto& cs = fw.cliques;
  auto off = offsets(cs);
  const int N = off.back();
  SdpProblem& q = out.program;
  q.n = N;
  for (const auto& c : cs) q.block_structure.push_back(static_cast<int>(c.size()));
  auto owner = [&](int i, int j) {
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (contains(cs[k], i) && contains(cs[k], j)) return static_cast<int>(k);
    return -1;
  };

  auto place = [&](const SparseSymMatrix& M) {
    std::vector<std::tuple<int, int, double>> t;
    if (side == BoundSide::Upper) {
      // ⟨M, Σ E_kᵀ X_k E_k⟩ = Σ ⟨E_k M E_kᵀ, X_k⟩
      for (std::size_t k = 0; k < cs.size(); ++k)
        for (std::size_t a = 0; a < cs[k].size(); ++a)
          for (std::size_t bb = a; bb < cs[k].size(); ++bb) {
            double v = M.get(cs[k][a], cs[k][bb]);
            if (v != 0.0) t.emplace_back(off[k] + a, off[k] + bb, v);
          }
    } else {
      for (const auto& [key, v] : M.values()) {
        if (v == 0.0) continue;
        int k = owner(key.first, key.second);
        if (k < 0) throw ConstraintOutsideClique("data entry (" + std::to_string(key.first + 1) + "," +
                                                 std::to_string(key.second + 1) + ") lies outside every clique");
        t.emplace_back(off[k] + local_index(cs[k], key.first), off[k] + local_index(cs[k], key.second), v);
      }
    }
    return SparseSymMatrix::from_triplets(N, t);
  };
  q.C = place(p.C);
  for (const auto& a : p.A) q.A.push_back(place(a));
  std::vector<double> b(p.b.data(), p.b.data() + p.b.size());

  if (side == BoundSide::Lower) {
    const double h = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < p.n; ++i)
      for (int j = i; j < p.n; ++j) {
        std::vector<int> holders;
        for (std::size_t k = 0; k < cs.size(); ++k)
          if (contains(cs[k], i) && contains(cs[k], j)) holders.push_back(static_cast<int>(k));
        // chain consecutive holders; all-pairs rows would be linearly dependent
        for (std::size_t t = 0; t + 1 < holders.size(); ++t) {
          int k = holders[t], l = holders[t + 1];
          double w = i == j ? 1.0 : h;
          out.consistency_rows.push_back(q.m());
          q.A.push_back(SparseSymMatrix::from_triplets(
              N, {{off[k] + local_index(cs[k], i), off[k] + local_index(cs[k], j), w},
                  {off[l] + local_index(cs[l], i), off[l] + local_index(cs[l], j), -w}}));
          b.push_back(0.0);
        }
      }
  }
  q.b = Eigen::Map<Vec>(b.data(), static_cast<Eigen::Index>(b.size()));
  return out;
}

Mat fw_recover(const BoundProgram& bp, const std::vector<Mat>& blocks, BoundSide side, int n) {
  if (blocks.size() != bp.cliques.size()) throw DimensionMismatch("one block per clique expected");
  Mat X = Mat::Zero(n, n);
  if (side == BoundSide::Upper) {
    for (std::size_t k = 0; k < blocks.size(); ++k) inflate_add(X, blocks[k], bp.cliques[k]);
    return X;
  }
  std::vector<char> set(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& c = bp.cliques[k];
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t bb = 0; bb < c.size(); ++bb) {
        std::size_t idx = static_cast<std::size_t>(c[a]) * n + c[bb];
        if (set[idx]) continue;
        set[idx] = 1;
        X(c[a], c[bb]) = blocks[k](a, bb);
      }
  }
  return X;
}

}  // namespace csdp
