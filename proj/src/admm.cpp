#include "csdp/admm.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "csdp/errors.hpp"

namespace csdp {

void AdmmSettings::validate() const {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  if (!(eps_abs > 0) || !(eps_rel > 0)) throw std::invalid_argument("tolerances must be positive");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
  if (check_every < 1) throw std::invalid_argument("check_every must be at least 1");
}

const char* to_string(SolveStatus s) { return s == SolveStatus::Solved ? "solved" : "max_iter"; }

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Symmetric vectorization over the chordal pattern, √2 on off-diagonals.
struct Layout {
  int n = 0;
  std::vector<std::pair<int, int>> entries;
  std::map<std::pair<int, int>, int> index;
  Vec D;                               // clique membership per entry
  std::vector<std::vector<int>> local; // clique svec slot -> global entry
  std::vector<int> sizes;
  Vec c, b;
  Eigen::SparseMatrix<double, Eigen::RowMajor> A;

  Layout(const DecomposedSdp& d) {
    const SdpProblem& p = d.base;
    n = p.n;
    for (int i = 0; i < n; ++i) index[{i, i}] = 0;
    for (auto e : d.pattern.edges()) index[e] = 0;
    for (auto& [k, idx] : index) {
      idx = static_cast<int>(entries.size());
      entries.push_back(k);
    }
    const int nv = static_cast<int>(entries.size());
    D = Vec::Zero(nv);
    for (const auto& cl : d.cliques) {
      std::vector<int> loc;
      for (std::size_t a = 0; a < cl.size(); ++a)
        for (std::size_t bb = a; bb < cl.size(); ++bb) {
          int g = index.at({cl[a], cl[bb]});
          loc.push_back(g);
          D[g] += 1.0;
        }
      local.push_back(std::move(loc));
      sizes.push_back(static_cast<int>(cl.size()));
    }
    for (int e = 0; e < nv; ++e)
      if (D[e] == 0.0) D[e] = 1.0;  // isolated diagonal entries outside every clique cannot occur
    c = vec(p.C);
    b = p.b;
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < p.m(); ++i)
      for (const auto& [k, v] : p.A[i].values())
        if (v != 0.0) t.emplace_back(i, index.at(k), k.first == k.second ? v : kSqrt2 * v);
    A.resize(p.m(), nv);
    A.setFromTriplets(t.begin(), t.end());
  }

  int nvar() const { return static_cast<int>(entries.size()); }

  Vec vec(const SparseSymMatrix& M) const {
    Vec v = Vec::Zero(nvar());
    for (const auto& [k, val] : M.values())
      if (val != 0.0) v[index.at(k)] = k.first == k.second ? val : kSqrt2 * val;
    return v;
  }

  SparseSymMatrix mat(const Vec& v, const SparsityPattern& pat) const {
    SparseSymMatrix M(pat);
    for (int e = 0; e < nvar(); ++e) {
      auto [i, j] = entries[e];
      M.set(i, j, i == j ? v[e] : v[e] / kSqrt2);
    }
    return M;
  }

  // E_k X E_kᵀ as a dense clique matrix
  Mat gather(const Vec& x, int k) const {
    const int s = sizes[k];
    Mat M(s, s);
    int t = 0;
    for (int a = 0; a < s; ++a)
      for (int bb = a; bb < s; ++bb, ++t) {
        double v = x[local[k][t]];
        if (a == bb) M(a, a) = v;
        else M(a, bb) = M(bb, a) = v / kSqrt2;
      }
    return M;
  }

  // acc += P_kᵀ svec(M)
  void scatter(Vec& acc, const Mat& M, int k) const {
    const int s = sizes[k];
    int t = 0;
    for (int a = 0; a < s; ++a)
      for (int bb = a; bb < s; ++bb, ++t) acc[local[k][t]] += a == bb ? M(a, a) : kSqrt2 * M(a, bb);
  }
};

// Cached factorization of A D⁻¹ Aᵀ; it does not depend on ρ.
struct Kkt {
  Eigen::LLT<Mat> llt;
  int m = 0;

  Kkt(const Layout& L, const SdpProblem& p) : m(p.m()) {
    if (m == 0) return;
    Vec Dinv = L.D.cwiseInverse();
    Eigen::SparseMatrix<double> ADA = L.A * Dinv.asDiagonal() * Eigen::SparseMatrix<double>(L.A.transpose());
    Mat M = Mat(ADA);
    llt.compute(M);
    bool ok = llt.info() == Eigen::Success;
    if (ok) {
      Vec piv = llt.matrixLLT().diagonal().cwiseAbs2();
      double scale = std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
      ok = piv.minCoeff() > 1e-12 * scale;
    }
    if (!ok) throw SingularKkt(dependent_rows(p));
  }

  Vec solve(const Vec& r) const { return m == 0 ? Vec() : Vec(llt.solve(r)); }
};

double fro(const Mat& M) { return M.norm(); }

struct Checker {
  const AdmmSettings& s;
  Solution& sol;
  bool header = false;

  void log(int iter, double pr, double dr, double obj, double rho) {
    sol.history.push_back({iter, pr, dr, obj, rho});
    if (!s.log) return;
    if (!header) {
      *s.log << "iter,primal_res,dual_res,objective,rho\n";
      header = true;
    }
    *s.log << iter << ',' << format_double(pr) << ',' << format_double(dr) << ',' << format_double(obj) << ','
           << format_double(rho) << '\n';
  }
};

void rebalance(const AdmmSettings& s, double pr, double dr, double& rho, std::vector<Mat>& lambda) {
  if (!s.adaptive_rho) return;
  double f = 1.0;
  if (pr > 10.0 * dr) f = 2.0;
  else if (dr > 10.0 * pr) f = 0.5;
  if (f == 1.0) return;
  rho *= f;
  for (auto& l : lambda) l /= f;  // scaled multipliers follow ρ_old/ρ_new
}

}  // namespace

Solution solve_domain(const DecomposedSdp& d, const AdmmSettings& s) {
  if (d.mode != DecompositionMode::Domain) throw std::invalid_argument("solve_domain needs a domain decomposition");
  s.validate();
  if (s.threads > 0) set_num_threads(s.threads);
  d.base.validate();
  Layout L(d);
  Kkt kkt(L, d.base);
  const int K = static_cast<int>(d.cliques.size());
  const int nv = L.nvar();
  Vec Dinv = L.D.cwiseInverse();

  Solution sol;
  Checker chk{s, sol};
  double rho = s.rho;
  Vec x = Vec::Zero(nv), mu = Vec::Zero(d.base.m());
  std::vector<Mat> Xk(K), Lk(K), target(K), Xold(K);
  for (int k = 0; k < K; ++k) Xk[k] = Lk[k] = Mat::Zero(L.sizes[k], L.sizes[k]);

  double best = std::numeric_limits<double>::infinity();
  AdmmState best_state;
  double best_obj = 0, best_pr = 0, best_dr = 0, best_rho = rho;
  auto snapshot = [&](int iter) {
    AdmmState st;
    st.X = L.mat(x, d.pattern);
    st.y = -rho * mu;
    st.clique_vars = Xk;
    st.multipliers = Lk;
    st.iter = iter;
    return st;
  };

  bool solved = false;
  int iter = 0;
  double pr = 0, dr = 0;
  for (iter = 1; iter <= s.max_iter; ++iter) {
    // x-update: equality-constrained quadratic with Hessian ρD
    Vec w = Vec::Zero(nv);
    for (int k = 0; k < K; ++k) L.scatter(w, Xk[k] + Lk[k], k);
    Vec r = w - L.c / rho;
    if (d.base.m() > 0) {
      mu = kkt.solve(L.A * r.cwiseProduct(Dinv) - L.b);
      x = (r - L.A.transpose() * mu).cwiseProduct(Dinv);
    } else {
      x = r.cwiseProduct(Dinv);
    }
    // clique projections
    for (int k = 0; k < K; ++k) target[k] = L.gather(x, k) - Lk[k];
    Xold.swap(Xk);
    psd_project_batch(target, Xk, s.exec);
    // multipliers, residuals; fixed clique order
    double pr2 = 0;
    bool primal_ok = true;
    Vec dchange = Vec::Zero(nv), lam = Vec::Zero(nv);
    for (int k = 0; k < K; ++k) {
      Mat ex = target[k] + Lk[k];
      Mat diff = Xk[k] - ex;
      Lk[k] += diff;
      double nd = fro(diff);
      pr2 += nd * nd;
      if (nd > s.eps_abs * std::sqrt(double(L.sizes[k])) + s.eps_rel * std::max(fro(Xk[k]), fro(ex)))
        primal_ok = false;
      L.scatter(dchange, Xk[k] - Xold[k], k);
      L.scatter(lam, Lk[k], k);
    }
    pr = std::sqrt(pr2);
    dr = rho * dchange.norm();
    bool dual_ok = dr <= s.eps_abs * std::sqrt(double(nv)) + s.eps_rel * rho * lam.norm();
    if (!std::isfinite(pr) || !std::isfinite(dr)) break;

    if (iter % s.check_every == 0 || iter == s.max_iter) {
      double obj = L.c.dot(x);
      chk.log(iter, pr, dr, obj, rho);
      bool eq_ok = true;
      if (d.base.m() > 0) {
        Vec ax = L.A * x - L.b;
        for (int i = 0; i < ax.size(); ++i)
          if (std::abs(ax[i]) > s.eps_abs + s.eps_rel * std::abs(L.b[i])) eq_ok = false;
      }
      if (primal_ok && dual_ok && eq_ok) {
        solved = true;
        break;
      }
      double score = std::max(pr, dr);
      if (score < best) {
        best = score;
        best_state = snapshot(iter);
        best_obj = obj;
        best_pr = pr;
        best_dr = dr;
        best_rho = rho;
      }
      rebalance(s, pr, dr, rho, Lk);
    }
  }

  if (solved) {
    sol.status = SolveStatus::Solved;
    sol.state = snapshot(iter);
    sol.objective = L.c.dot(x);
    sol.primal_res = pr;
    sol.dual_res = dr;
    sol.rho = rho;
  } else {
    sol.status = SolveStatus::MaxIter;
    if (best_state.clique_vars.empty()) {
      sol.state = snapshot(std::min(iter, s.max_iter));
      sol.objective = L.c.dot(x);
      sol.primal_res = pr;
      sol.dual_res = dr;
      sol.rho = rho;
    } else {
      sol.state = best_state;
      sol.objective = best_obj;
      sol.primal_res = best_pr;
      sol.dual_res = best_dr;
      sol.rho = best_rho;
    }
  }
  if (s.complete_primal) sol.X_completed = max_det_complete(sol.state.X, d.tree, {false});
  return sol;
}

Solution solve_range(const DecomposedSdp& d, const AdmmSettings& s) {
  if (d.mode != DecompositionMode::Range) throw std::invalid_argument("solve_range needs a range decomposition");
  s.validate();
  if (s.threads > 0) set_num_threads(s.threads);
  d.base.validate();
  Layout L(d);
  Kkt kkt(L, d.base);
  const int K = static_cast<int>(d.cliques.size());
  const int nv = L.nvar();
  const int m = d.base.m();
  Vec Dinv = L.D.cwiseInverse();

  Solution sol;
  Checker chk{s, sol};
  double rho = s.rho;
  Vec y = Vec::Zero(m), xi = Vec::Zero(nv);
  std::vector<Mat> Zk(K), Lk(K), target(K), Zold(K), Vk(K);
  for (int k = 0; k < K; ++k) Zk[k] = Lk[k] = Mat::Zero(L.sizes[k], L.sizes[k]);

  double best = std::numeric_limits<double>::infinity();
  AdmmState best_state;
  double best_obj = 0, best_pr = 0, best_dr = 0, best_rho = rho;
  auto snapshot = [&](int iter) {
    AdmmState st;
    st.X = L.mat(xi, d.pattern);
    st.y = y;
    st.clique_vars = Zk;
    st.multipliers = Lk;
    st.iter = iter;
    return st;
  };

  bool solved = false;
  int iter = 0;
  double pr = 0, dr = 0;
  for (iter = 1; iter <= s.max_iter; ++iter) {
    // (y, V)-update: min −bᵀy + ρ/2 Σ‖V_k − (Z_k + Λ_k)‖² s.t. Aᵀy + Σ P_kᵀ v_k = c
    Vec w = Vec::Zero(nv);
    for (int k = 0; k < K; ++k) L.scatter(w, Zk[k] + Lk[k], k);
    if (m > 0) y = kkt.solve(L.A * (L.c - w).cwiseProduct(Dinv) + L.b / rho);
    Vec Aty = m > 0 ? Vec(L.A.transpose() * y) : Vec::Zero(nv);
    xi = rho * (Aty - L.c + w).cwiseProduct(Dinv);
    for (int k = 0; k < K; ++k) {
      Vk[k] = Zk[k] + Lk[k] - L.gather(xi, k) / rho;
      target[k] = Vk[k] - Lk[k];
    }
    Zold.swap(Zk);
    psd_project_batch(target, Zk, s.exec);
    double pr2 = 0;
    bool primal_ok = true;
    Vec dchange = Vec::Zero(nv), lam = Vec::Zero(nv);
    for (int k = 0; k < K; ++k) {
      Mat diff = Zk[k] - Vk[k];
      Lk[k] += diff;
      double nd = fro(diff);
      pr2 += nd * nd;
      if (nd > s.eps_abs * std::sqrt(double(L.sizes[k])) + s.eps_rel * std::max(fro(Zk[k]), fro(Vk[k])))
        primal_ok = false;
      L.scatter(dchange, Zk[k] - Zold[k], k);
      L.scatter(lam, Lk[k], k);
    }
    pr = std::sqrt(pr2);
    dr = rho * dchange.norm();
    bool dual_ok = dr <= s.eps_abs * std::sqrt(double(nv)) + s.eps_rel * rho * lam.norm();
    if (!std::isfinite(pr) || !std::isfinite(dr)) break;

    if (iter % s.check_every == 0 || iter == s.max_iter) {
      double obj = m > 0 ? L.b.dot(y) : 0.0;
      chk.log(iter, pr, dr, obj, rho);
      if (primal_ok && dual_ok) {
        solved = true;
        break;
      }
      double score = std::max(pr, dr);
      if (score < best) {
        best = score;
        best_state = snapshot(iter);
        best_obj = obj;
        best_pr = pr;
        best_dr = dr;
        best_rho = rho;
      }
      rebalance(s, pr, dr, rho, Lk);
    }
  }

  if (solved) {
    sol.status = SolveStatus::Solved;
    sol.state = snapshot(iter);
    sol.objective = m > 0 ? L.b.dot(y) : 0.0;
    sol.primal_res = pr;
    sol.dual_res = dr;
    sol.rho = rho;
  } else {
    sol.status = SolveStatus::MaxIter;
    if (best_state.clique_vars.empty()) {
      sol.state = snapshot(std::min(iter, s.max_iter));
      sol.objective = m > 0 ? L.b.dot(y) : 0.0;
      sol.primal_res = pr;
      sol.dual_res = dr;
      sol.rho = rho;
    } else {
      sol.state = best_state;
      sol.objective = best_obj;
      sol.primal_res = best_pr;
      sol.dual_res = best_dr;
      sol.rho = best_rho;
    }
  }
  if (s.complete_primal) sol.X_completed = max_det_complete(sol.state.X, d.tree, {false});
  return sol;
}

Solution solve(const DecomposedSdp& d, const AdmmSettings& s) {
  return d.mode == DecompositionMode::Domain ? solve_domain(d, s) : solve_range(d, s);
}

}  // namespace csdp
