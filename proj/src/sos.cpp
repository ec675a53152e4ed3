#include "csdp/sos.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "csdp/errors.hpp"
#include "csdp/factor_width.hpp"
#include "csdp/kernels.hpp"
#include "csdp/sdp.hpp"

namespace csdp {

std::vector<int> GramSdp::block_sizes() const {
  std::vector<int> s;
  for (const auto& b : blocks) s.push_back(b.size());
  return s;
}

const char* to_string(SosStatus s) { return s == SosStatus::Feasible ? "feasible" : "infeasible"; }

namespace {

using RowKey = std::tuple<int, int, Exponent>;

bool subset_of(const std::vector<int>& a, const Clique& c) {
  return std::all_of(a.begin(), a.end(), [&](int v) { return std::binary_search(c.begin(), c.end(), v); });
}

int ceil_half(int d) { return d <= 0 ? 0 : (d + 1) / 2; }

std::pair<int, Exponent> block_index(const GramBlock& b, int p) {
  int m = static_cast<int>(b.monomials.size());
  int r = b.matrix_rows.empty() ? 0 : b.matrix_rows[p / m];
  return {r, b.monomials[p % m]};
}

// Every product the block can form, weighted by g.
void add_block_terms(std::map<RowKey, std::vector<GramTerm>>& rows, const GramBlock& b, int bi, const Polynomial& g) {
  const int s = b.size();
  for (int p = 0; p < s; ++p) {
    auto [rp, bp] = block_index(b, p);
    for (int q = p; q < s; ++q) {
      auto [rq, bq] = block_index(b, q);
      double base = p == q ? 1.0 : (rp == rq ? 2.0 : 1.0);
      Exponent pq = bp + bq;
      for (const auto& [delta, c] : g.terms())
        rows[{std::min(rp, rq), std::max(rp, rq), delta + pq}].push_back({bi, p, q, base * c.get_d()});
    }
  }
}

// Rows for every produced monomial; targets outside them must be zero.
void finish_rows(GramSdp& g, std::map<RowKey, std::vector<GramTerm>>& rows, const std::map<RowKey, mpq_class>& targets) {
  std::vector<std::vector<int>> uncovered;
  for (const auto& [key, v] : targets)
    if (v != 0 && !rows.count(key)) uncovered.push_back(std::get<2>(key));
  if (!uncovered.empty()) throw SupportNotCovered(std::move(uncovered));
  g.rows.clear();
  g.target_scale = 0.0;
  for (auto& [key, terms] : rows) {
    GramRow r;
    r.i = std::get<0>(key);
    r.j = std::get<1>(key);
    r.alpha = std::get<2>(key);
    auto it = targets.find(key);
    r.target = it == targets.end() ? mpq_class(0) : it->second;
    r.terms = std::move(terms);
    g.target_scale = std::max(g.target_scale, std::abs(r.target.get_d()));
    g.rows.push_back(std::move(r));
  }
}

std::map<RowKey, mpq_class> scalar_targets(const Polynomial& f) {
  std::map<RowKey, mpq_class> t;
  for (const auto& [e, c] : f.terms()) t[{0, 0, e}] = c;
  return t;
}

void check_basis(const ExponentSet& B, int n) {
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (static_cast<int>(B[i].size()) != n) throw DimensionMismatch("basis exponent length differs from variable count");
    if (i > 0 && !(B[i - 1] < B[i])) throw std::invalid_argument("basis must be sorted and unique");
  }
}

Polynomial one(int n) { return Polynomial::constant(n, 1); }

CliqueSet chordal_cliques(const Graph& g) {
  return is_chordal(g) ? maximal_cliques(g) : maximal_cliques(chordal_extension(g, ExtensionHeuristic::MinDegree));
}

SparsityPattern intersect(const SparsityPattern& a, const SparsityPattern& b) {
  std::vector<std::pair<int, int>> e;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(), std::back_inserter(e));
  return SparsityPattern(a.n(), e);
}

// ---- Douglas–Rachford on svec coordinates ----

int svec_index(int p, int q) { return q * (q + 1) / 2 + p; }

Mat unpack(const Vec& v, int off, int s) {
  Mat S(s, s);
  const double r2 = std::sqrt(2.0);
  for (int q = 0; q < s; ++q)
    for (int p = 0; p <= q; ++p) {
      double x = v[off + svec_index(p, q)];
      if (p == q) S(p, p) = x;
      else S(p, q) = S(q, p) = x / r2;
    }
  return S;
}

void pack(const Mat& S, Vec& v, int off) {
  const double r2 = std::sqrt(2.0);
  for (int q = 0; q < S.rows(); ++q)
    for (int p = 0; p <= q; ++p) v[off + svec_index(p, q)] = p == q ? S(p, p) : r2 * S(p, q);
}

GramSolution solve_dense_dr(const GramSdp& g, const GramSolveSettings& st, double tol) {
  using SpMat = Eigen::SparseMatrix<double>;
  const auto sizes = g.block_sizes();
  std::vector<int> off{0};
  for (int s : sizes) off.push_back(off.back() + s * (s + 1) / 2);
  const int nv = off.back();
  const int m = static_cast<int>(g.rows.size());
  std::vector<Eigen::Triplet<double>> trip;
  Vec b(m);
  for (int r = 0; r < m; ++r) {
    b[r] = g.rows[r].target.get_d();
    for (const auto& t : g.rows[r].terms)
      trip.emplace_back(r, off[t.block] + svec_index(t.p, t.q), t.p == t.q ? t.coef : t.coef / std::sqrt(2.0));
  }
  SpMat M(m, nv);
  M.setFromTriplets(trip.begin(), trip.end());
  SpMat MMt = M * M.transpose();

  Eigen::SimplicialLDLT<SpMat> ldlt(MMt);
  bool sparse_ok = ldlt.info() == Eigen::Success;
  if (sparse_ok) {
    Vec d = ldlt.vectorD().cwiseAbs();
    sparse_ok = d.size() == 0 || d.minCoeff() > 1e-12 * std::max(1.0, d.maxCoeff());
  }
  Mat pinv;
  if (!sparse_ok) pinv = sym_pinv(Mat(MMt));  // dependent rows
  auto affine = [&](const Vec& v) -> Vec {
    Vec r = M * v - b;
    Vec w = sparse_ok ? Vec(ldlt.solve(r)) : Vec(pinv * r);
    return v - M.transpose() * w;
  };
  std::vector<Mat> blocks(sizes.size()), proj(sizes.size());
  auto cone = [&](const Vec& v) -> Vec {
    for (std::size_t k = 0; k < sizes.size(); ++k) blocks[k] = unpack(v, off[k], sizes[k]);
    psd_project_batch(blocks, proj, st.exec);
    Vec out(nv);
    for (std::size_t k = 0; k < sizes.size(); ++k) pack(proj[k], out, off[k]);
    return out;
  };

  GramSolution sol;
  sol.method = "douglas-rachford";
  Vec z = Vec::Zero(nv), x = cone(z);
  int it = 0;
  for (; it < st.max_iter; ++it) {
    x = cone(z);
    Vec y = affine(2.0 * x - z);
    z += y - x;
    if (it % 25 == 0 && (M * x - b).cwiseAbs().maxCoeff() <= 0.1 * tol) break;
  }
  x = cone(z);
  sol.iterations = it;
  for (std::size_t k = 0; k < sizes.size(); ++k) sol.S.push_back(unpack(x, off[k], sizes[k]));
  return sol;
}

GramSolution solve_admm(const GramSdp& g, const GramSolveSettings& st) {
  const auto sizes = g.block_sizes();
  std::vector<int> off{0};
  for (int s : sizes) off.push_back(off.back() + s);
  const int N = off.back();
  SdpProblem p;
  p.n = N;
  p.block_structure = sizes;
  p.C = SparseSymMatrix(N);
  std::vector<double> b;
  for (const auto& r : g.rows) {
    std::map<std::pair<int, int>, double> acc;
    for (const auto& t : r.terms) acc[{off[t.block] + t.p, off[t.block] + t.q}] += t.p == t.q ? t.coef : 0.5 * t.coef;
    std::vector<std::tuple<int, int, double>> trip;
    for (const auto& [k, v] : acc) trip.emplace_back(k.first, k.second, v);
    p.A.push_back(SparseSymMatrix::from_triplets(N, trip));
    b.push_back(r.target.get_d());
  }
  p.b = Eigen::Map<Vec>(b.data(), static_cast<Eigen::Index>(b.size()));

  GramSolution sol;
  sol.method = "admm";
  Presolved pre;
  try {
    pre = remove_dependent_rows(p);
  } catch (const Error&) {
    // inconsistent coefficient equations: no Gram matrix at all
    for (int s : sizes) sol.S.push_back(Mat::Zero(s, s));
    return sol;
  }
  auto d = domain_decompose(pre.problem);
  Solution r = solve_domain(d, st.admm);
  sol.iterations = r.state.iter;
  Mat X;
  try {
    X = max_det_complete(r.state.X, d.tree, {false});
  } catch (const Error&) {
    X = r.state.X.to_dense();
  }
  std::vector<Mat> raw;
  for (std::size_t k = 0; k < sizes.size(); ++k) raw.push_back(X.block(off[k], off[k], sizes[k], sizes[k]));
  psd_project_batch(raw, sol.S, st.exec);
  return sol;
}

}  // namespace

CliqueSet pattern_cliques(const SparsityPattern& p) {
  Graph g = p.graph();
  return is_chordal(g) ? maximal_cliques(g) : all_maximal_cliques(g);
}

GramSdp gram_sdp(const Polynomial& f, const ExponentSet& B, const CliqueSet& cliques) {
  check_basis(B, f.n());
  GramSdp g;
  g.n = f.n();
  g.basis = B;
  g.cliques = cliques;
  g.sparsity = SparsityPattern::from_cliques(static_cast<int>(B.size()), cliques);
  std::map<RowKey, std::vector<GramTerm>> rows;
  Polynomial w = one(f.n());
  for (std::size_t k = 0; k < cliques.size(); ++k) {
    GramBlock blk;
    blk.clique = static_cast<int>(k);
    for (int i : cliques[k]) {
      if (i < 0 || i >= static_cast<int>(B.size())) throw DimensionMismatch("clique index outside the basis");
      blk.monomials.push_back(B[i]);
    }
    add_block_terms(rows, blk, static_cast<int>(k), w);
    g.blocks.push_back(std::move(blk));
  }
  finish_rows(g, rows, scalar_targets(f));
  return g;
}

GramSdp gram_sdp(const Polynomial& f, const ExponentSet& B, const SparsityPattern& edges) {
  check_basis(B, f.n());
  if (edges.n() != static_cast<int>(B.size())) throw DimensionMismatch("pattern size differs from the basis size");
  std::set<Exponent> reach;
  for (const auto& b : B) reach.insert(b + b);
  for (auto [i, j] : edges.edges()) reach.insert(B[i] + B[j]);
  std::vector<std::vector<int>> uncovered;
  for (const auto& [a, c] : f.terms())
    if (!reach.count(a)) uncovered.push_back(a);
  if (!uncovered.empty()) throw SupportNotCovered(std::move(uncovered));
  GramSdp g = gram_sdp(f, B, pattern_cliques(edges));
  g.sparsity = edges;
  return g;
}

double gram_residual(const GramSdp& g, const std::vector<Mat>& S) {
  if (S.size() != g.blocks.size()) throw DimensionMismatch("one matrix per Gram block expected");
  double r = 0.0;
  for (const auto& row : g.rows) {
    double v = -row.target.get_d();
    for (const auto& t : row.terms) v += t.coef * S[t.block](t.p, t.q);
    r = std::max(r, std::abs(v));
  }
  return r;
}

GramSolution solve_gram(const GramSdp& g, const GramSolveSettings& s) {
  const double tol = s.rel_tol * (1.0 + g.target_scale);
  GramSolution sol;
  if (g.rows.empty()) {
    for (int n : g.block_sizes()) sol.S.push_back(Mat::Zero(n, n));
    sol.method = "trivial";
  } else {
    auto sizes = g.block_sizes();
    int largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    sol = largest <= s.dense_max_block ? solve_dense_dr(g, s, tol) : solve_admm(g, s);
  }
  sol.tolerance = tol;
  sol.residual = gram_residual(g, sol.S);
  sol.status = sol.residual <= tol ? SosStatus::Feasible : SosStatus::Infeasible;
  return sol;
}

std::vector<std::map<Exponent, double>> sigma_terms(const GramSdp& g, const std::vector<Mat>& S) {
  std::vector<std::map<Exponent, double>> out;
  for (std::size_t k = 0; k < g.blocks.size(); ++k) {
    const auto& b = g.blocks[k];
    std::map<Exponent, double> sigma;
    if (b.matrix_rows.empty()) {
      const int s = b.size();
      for (int p = 0; p < s; ++p)
        for (int q = 0; q < s; ++q) sigma[b.monomials[p] + b.monomials[q]] += S[k](p, q);
    }
    out.push_back(std::move(sigma));
  }
  return out;
}

Graph csp_graph(const ExponentSet& A, int n) {
  std::vector<std::pair<int, int>> e;
  for (const auto& a : A) {
    auto z = nnz(a);
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = i + 1; j < z.size(); ++j) e.emplace_back(z[i], z[j]);
  }
  return Graph::from_edges(n, e);
}

Graph csp_graph(const Polynomial& f, const std::vector<Polynomial>& g) {
  Graph base = csp_graph(f.support(), f.n());
  auto e = base.edges();
  for (const auto& gi : g) {
    if (gi.n() != f.n()) throw DimensionMismatch("constraint has a different variable count");
    auto v = gi.vars();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) e.emplace_back(v[i], v[j]);
  }
  return Graph::from_edges(f.n(), e);
}

CliqueSet csp_cliques(const ExponentSet& B, const CliqueSet& var_cliques) {
  CliqueSet out;
  for (const auto& J : var_cliques) {
    Clique c;
    for (std::size_t b = 0; b < B.size(); ++b)
      if (subset_of(nnz(B[b]), J)) c.push_back(static_cast<int>(b));
    out.push_back(std::move(c));
  }
  return out;
}

SparsityPattern csp_edges(const ExponentSet& B, const CliqueSet& var_cliques) {
  std::vector<std::pair<int, int>> e;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      auto z = nnz(B[i] + B[j]);
      if (std::any_of(var_cliques.begin(), var_cliques.end(), [&](const Clique& J) { return subset_of(z, J); }))
        e.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return SparsityPattern(static_cast<int>(B.size()), e);
}

std::vector<SparsityPattern> tssos_edges(const ExponentSet& A, const ExponentSet& B, TssosExtension ext,
                                         int max_iter) {
  const int N = static_cast<int>(B.size());
  if (max_iter <= 0) max_iter = std::max(1, N * N);
  std::set<Exponent> prev(A.begin(), A.end());
  for (const auto& b : B) prev.insert(b + b);
  std::vector<SparsityPattern> out;
  for (int k = 0; k < max_iter; ++k) {
    std::vector<std::pair<int, int>> raw;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        if (prev.count(B[i] + B[j])) raw.emplace_back(i, j);
    Graph g = Graph::from_edges(N, raw);
    Graph e = chordal_extension(
        g, ext == TssosExtension::Block ? ExtensionHeuristic::CompleteComponents : ExtensionHeuristic::MinDegree);
    SparsityPattern p = SparsityPattern::from_graph(e);
    if (!out.empty() && p == out.back()) break;
    out.push_back(p);
    prev.clear();
    for (const auto& b : B) prev.insert(b + b);
    for (auto [i, j] : p.edges()) prev.insert(B[i] + B[j]);
  }
  return out;
}

CsTssos cs_tssos_edges(const ExponentSet& A, const ExponentSet& B, TssosExtension ext, const Graph& csp,
                       int max_iter) {
  CsTssos out;
  out.var_cliques = chordal_cliques(csp);
  for (const auto& b : B) {
    auto z = nnz(b);
    if (std::any_of(out.var_cliques.begin(), out.var_cliques.end(), [&](const Clique& J) { return subset_of(z, J); }))
      out.basis.push_back(b);
  }
  SparsityPattern E_csp = csp_edges(out.basis, out.var_cliques);
  for (const auto& E : tssos_edges(A, out.basis, ext, max_iter)) {
    SparsityPattern p = intersect(E, E_csp);
    if (out.steps.empty() || !(p == out.steps.back())) out.steps.push_back(std::move(p));
  }
  return out;
}

SosStrategy parse_strategy(const std::string& s) {
  if (s == "dense") return SosStrategy::Dense;
  if (s == "newton") return SosStrategy::Newton;
  if (s == "csp") return SosStrategy::Csp;
  if (s == "tssos") return SosStrategy::Tssos;
  if (s == "chordal-tssos") return SosStrategy::ChordalTssos;
  if (s == "cs-tssos") return SosStrategy::CsTssos;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

const char* to_string(SosStrategy s) {
  switch (s) {
    case SosStrategy::Dense: return "dense";
    case SosStrategy::Newton: return "newton";
    case SosStrategy::Csp: return "csp";
    case SosStrategy::Tssos: return "tssos";
    case SosStrategy::ChordalTssos: return "chordal-tssos";
    case SosStrategy::CsTssos: return "cs-tssos";
  }
  return "newton";
}

SosResult sos_check(const Polynomial& f, const SosOptions& opt) {
  SosResult res;
  const int deg = f.degree();
  if (deg < 0) {
    res.status = SosStatus::Feasible;
    return res;
  }
  if (deg % 2 != 0) throw Error("an SOS polynomial has even degree, got " + std::to_string(deg));
  const int n = f.n();
  ExponentSet B = opt.strategy == SosStrategy::Dense || !opt.use_newton ? monomials_up_to(n, deg / 2) : newton_basis(f);
  const ExponentSet A = f.support();
  auto pick = [&](const std::vector<SparsityPattern>& steps) -> const SparsityPattern& {
    res.levels = static_cast<int>(steps.size());
    res.level = opt.level <= 0 ? res.levels : std::min(opt.level, res.levels);
    return steps[res.level - 1];
  };
  CliqueSet cliques;
  switch (opt.strategy) {
    case SosStrategy::Dense:
    case SosStrategy::Newton: {
      Clique all(B.size());
      for (std::size_t i = 0; i < B.size(); ++i) all[i] = static_cast<int>(i);
      cliques.push_back(all);
      break;
    }
    case SosStrategy::Csp:
      // maximal cliques of the csp graph itself, chordal or not
      cliques = csp_cliques(B, all_maximal_cliques(csp_graph(A, n)));
      break;
    case SosStrategy::Tssos:
    case SosStrategy::ChordalTssos: {
      auto ext = opt.strategy == SosStrategy::Tssos ? TssosExtension::Block : TssosExtension::Chordal;
      cliques = pattern_cliques(pick(tssos_edges(A, B, ext)));
      break;
    }
    case SosStrategy::CsTssos: {
      auto cs = cs_tssos_edges(A, B, TssosExtension::Block, csp_graph(A, n));
      B = cs.basis;
      cliques = chordal_cliques(pick(cs.steps).graph());
      break;
    }
  }
  cliques.erase(std::remove_if(cliques.begin(), cliques.end(), [](const Clique& c) { return c.empty(); }),
                cliques.end());
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
  res.basis = B;
  res.cliques = cliques;
  for (const auto& c : cliques) res.block_sizes.push_back(static_cast<int>(c.size()));
  GramSdp g;
  try {
    g = gram_sdp(f, B, cliques);
  } catch (const SupportNotCovered& e) {
    for (const auto& a : e.uncovered) res.residual = std::max(res.residual, std::abs(f.coeff(a).get_d()));
    res.solve.residual = res.residual;
    res.solve.method = "uncovered";
    return res;
  }
  res.solve = solve_gram(g, opt.solver);
  res.status = res.solve.status;
  res.residual = res.solve.residual;
  res.sigma = sigma_terms(g, res.solve.S);
  return res;
}

GramSdp weighted_sos_assemble(const Polynomial& f, const SemialgebraicSet& K, int omega, bool sparse,
                              const std::optional<CliqueSet>& var_cliques) {
  const int n = f.n();
  int maxdeg = f.degree();
  for (const auto& g : K.g) {
    if (g.n() != n) throw DimensionMismatch("constraint has a different variable count");
    maxdeg = std::max(maxdeg, g.degree());
  }
  if (2 * omega < maxdeg) throw Error("relaxation order " + std::to_string(omega) + " is below half the degree");
  std::vector<Polynomial> gs{one(n)};
  gs.insert(gs.end(), K.g.begin(), K.g.end());

  GramSdp out;
  out.n = n;
  std::map<RowKey, std::vector<GramTerm>> rows;
  auto add = [&](GramBlock blk, int i) {
    if (blk.monomials.empty()) return;
    add_block_terms(rows, blk, static_cast<int>(out.blocks.size()), gs[i]);
    out.blocks.push_back(std::move(blk));
  };
  if (!sparse) {
    if (!K.radii.empty()) throw std::invalid_argument("ball radii need sparse mode");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      int w = omega - ceil_half(gs[i].degree());
      GramBlock blk;
      blk.weight = static_cast<int>(i);
      blk.monomials = monomials_up_to(n, w);
      add(std::move(blk), static_cast<int>(i));
    }
  } else {
    CliqueSet J = var_cliques ? *var_cliques : chordal_cliques(csp_graph(f, K.g));
    if (!K.radii.empty()) {
      if (K.radii.size() != J.size()) throw DimensionMismatch("one ball radius per csp clique expected");
      for (std::size_t k = 0; k < J.size(); ++k) {
        Polynomial ball = Polynomial::constant(n, mpq_class(K.radii[k] * K.radii[k]));
        for (int v : J[k]) ball = ball - Polynomial::variable(n, v).pow(2);
        gs.push_back(ball);
      }
      if (2 * omega < 2) throw Error("ball constraints need relaxation order at least 1");
    }
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto v = gs[i].vars();
      int w = omega - ceil_half(gs[i].degree());
      bool placed = false;
      for (std::size_t k = 0; k < J.size(); ++k) {
        if (!subset_of(v, J[k])) continue;
        placed = true;
        GramBlock blk;
        blk.weight = static_cast<int>(i);
        blk.clique = static_cast<int>(k);
        for (const auto& b : monomials_up_to(n, w))
          if (subset_of(nnz(b), J[k])) blk.monomials.push_back(b);
        add(std::move(blk), static_cast<int>(i));
      }
      if (!placed) throw ConstraintOutsideClique("constraint g_" + std::to_string(i) + " spans variables in no csp clique");
    }
  }
  finish_rows(out, rows, scalar_targets(f));
  return out;
}

GramSdp matrix_sos_assemble(const PolyMatrix& P, const CliqueSet& cliques, int nu, MatrixMultiplier mult,
                            const std::optional<SemialgebraicSet>& K) {
  const int r = static_cast<int>(P.size());
  if (r == 0) throw DimensionMismatch("empty polynomial matrix");
  const int n = P[0][0].n();
  int degP = 0;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(P[i].size()) != r) throw DimensionMismatch("polynomial matrix must be square");
    for (int j = 0; j < r; ++j) {
      if (P[i][j].n() != n) throw DimensionMismatch("entries in different variable counts");
      if (!(P[i][j] == P[j][i])) throw std::invalid_argument("polynomial matrix must be symmetric");
      degP = std::max(degP, P[i][j].degree());
      if (i < j && !P[i][j].is_zero()) edges.emplace_back(i, j);
    }
  }
  if (nu < 0) throw std::invalid_argument("nu must be nonnegative");
  if (!is_chordal(Graph::from_edges(r, edges))) throw NotChordal("sparsity graph of P is not chordal");
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      if (P[i][j].is_zero()) continue;
      bool in = std::any_of(cliques.begin(), cliques.end(), [&](const Clique& c) {
        return std::binary_search(c.begin(), c.end(), i) && std::binary_search(c.begin(), c.end(), j);
      });
      if (!in)
        throw ConstraintOutsideClique("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") lies outside every clique");
    }
  for (const auto& c : cliques)
    for (int v : c)
      if (v < 0 || v >= r) throw DimensionMismatch("clique row outside the matrix");

  GramSdp out;
  out.n = n;
  std::map<RowKey, std::vector<GramTerm>> rows;
  std::map<RowKey, mpq_class> targets;
  std::vector<Polynomial> gs{one(n)};
  Polynomial w = one(n);
  std::vector<int> orders;
  if (!K) {
    Polynomial norm2(n);
    for (int v = 0; v < n; ++v) norm2 = norm2 + Polynomial::variable(n, v).pow(2);
    w = (mult == MatrixMultiplier::NormPower ? norm2 : one(n) + norm2).pow(nu);
    orders.push_back(ceil_half(degP) + nu);
  } else {
    for (const auto& g : K->g) {
      if (g.n() != n) throw DimensionMismatch("constraint has a different variable count");
      gs.push_back(g);
    }
    for (const auto& g : gs) orders.push_back(nu - ceil_half(g.degree()));
  }
  for (std::size_t k = 0; k < cliques.size(); ++k)
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (orders[i] < 0) continue;  // g_i too high in degree for this ν
      GramBlock blk;
      blk.monomials = monomials_up_to(n, orders[i]);
      blk.matrix_rows = cliques[k];
      blk.weight = static_cast<int>(i);
      blk.clique = static_cast<int>(k);
      add_block_terms(rows, blk, static_cast<int>(out.blocks.size()), gs[i]);
      out.blocks.push_back(std::move(blk));
    }
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Polynomial t = w * P[i][j];
      for (const auto& [e, c] : t.terms()) targets[{i, j, e}] = c;
    }
  finish_rows(out, rows, targets);
  return out;
}

GramSdp sdsos_gram_constraint(const Polynomial& f, const ExponentSet& B, const Partition& part) {
  if (part.n() != static_cast<int>(B.size()))
    throw DimensionMismatch("partition covers " + std::to_string(part.n()) + " monomials, basis has " +
                            std::to_string(B.size()));
  return gram_sdp(f, B, fw_cliques(part).cliques);
}

}  // namespace csdp
