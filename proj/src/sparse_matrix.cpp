#include "csdp/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "csdp/errors.hpp"
#include "csdp/kernels.hpp"

namespace csdp {

namespace {

std::pair<int, int> ordered(int i, int j) { return i < j ? std::pair{i, j} : std::pair{j, i}; }

void check_index(int i, int n) {
  if (i < 0 || i >= n) throw DimensionMismatch("index " + std::to_string(i + 1) + " out of range");
}

}  // namespace

SparsityPattern::SparsityPattern(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  for (auto& e : edges) {
    check_index(e.first, n);
    check_index(e.second, n);
    e = ordered(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges.erase(std::remove_if(edges.begin(), edges.end(), [](auto e) { return e.first == e.second; }),
              edges.end());
  edges_ = std::move(edges);
}

SparsityPattern SparsityPattern::from_graph(const Graph& g) { return SparsityPattern(g.n(), g.edges()); }

SparsityPattern SparsityPattern::from_cliques(int n, const CliqueSet& cs) {
  std::vector<std::pair<int, int>> e;
  for (const auto& c : cs)
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) e.emplace_back(c[a], c[b]);
  return SparsityPattern(n, std::move(e));
}

SparsityPattern SparsityPattern::complete(int n) { return from_graph(Graph::complete(n)); }

bool SparsityPattern::contains(int i, int j) const {
  if (i == j) return i >= 0 && i < n_;
  return std::binary_search(edges_.begin(), edges_.end(), ordered(i, j));
}

SparsityPattern SparsityPattern::unite(const SparsityPattern& o) const {
  if (o.n_ != n_) throw DimensionMismatch("pattern dimensions differ");
  std::vector<std::pair<int, int>> e;
  std::set_union(edges_.begin(), edges_.end(), o.edges_.begin(), o.edges_.end(),
                 std::back_inserter(e));
  SparsityPattern p(n_);
  p.edges_ = std::move(e);
  return p;
}

bool SparsityPattern::subset_of(const SparsityPattern& o) const {
  return n_ == o.n_ && std::includes(o.edges_.begin(), o.edges_.end(), edges_.begin(), edges_.end());
}

SparseSymMatrix SparseSymMatrix::from_triplets(int n,
                                               const std::vector<std::tuple<int, int, double>>& t) {
  std::vector<std::pair<int, int>> e;
  for (auto& [i, j, v] : t)
    if (i != j) e.emplace_back(i, j);
  SparseSymMatrix m{SparsityPattern(n, e)};
  for (auto& [i, j, v] : t) m.set(i, j, v);
  return m;
}

SparseSymMatrix SparseSymMatrix::identity(int n) {
  SparseSymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

double SparseSymMatrix::get(int i, int j) const {
  auto it = values_.find(ordered(i, j));
  return it == values_.end() ? 0.0 : it->second;
}

void SparseSymMatrix::set(int i, int j, double v) {
  check_index(i, n());
  check_index(j, n());
  if (!pattern_.contains(i, j))
    throw DimensionMismatch("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") is outside the pattern");
  values_[ordered(i, j)] = v;
}

void SparseSymMatrix::add(int i, int j, double v) { set(i, j, get(i, j) + v); }

void SparseSymMatrix::extend_pattern(const SparsityPattern& p) { pattern_ = pattern_.unite(p); }

SparsityPattern SparseSymMatrix::support() const {
  std::vector<std::pair<int, int>> e;
  for (auto& [k, v] : values_)
    if (k.first != k.second && v != 0.0) e.push_back(k);
  return SparsityPattern(n(), e);
}

Mat SparseSymMatrix::to_dense() const {
  Mat d = Mat::Zero(n(), n());
  for (auto& [k, v] : values_) d(k.first, k.second) = d(k.second, k.first) = v;
  return d;
}

double SparseSymMatrix::max_abs() const {
  double m = 0;
  for (auto& [k, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseSymMatrix::dot(const SparseSymMatrix& o) const {
  double s = 0;
  const auto& small = values_.size() <= o.values_.size() ? values_ : o.values_;
  const auto& big = values_.size() <= o.values_.size() ? o.values_ : values_;
  for (auto& [k, v] : small) {
    auto it = big.find(k);
    if (it == big.end()) continue;
    s += (k.first == k.second ? 1.0 : 2.0) * v * it->second;
  }
  return s;
}

double SparseSymMatrix::dot(const Mat& d) const {
  double s = 0;
  for (auto& [k, v] : values_)
    s += k.first == k.second ? v * d(k.first, k.first)
                             : v * (d(k.first, k.second) + d(k.second, k.first));
  return s;
}

SparseSymMatrix project_pattern(const Mat& dense, const SparsityPattern& p) {
  if (dense.rows() != p.n() || dense.cols() != p.n())
    throw DimensionMismatch("project_pattern: dimension mismatch");
  SparseSymMatrix m(p);
  for (int i = 0; i < p.n(); ++i) m.set(i, i, dense(i, i));
  for (auto [i, j] : p.edges()) m.set(i, j, dense(i, j));
  return m;
}

Mat extract(const SparseSymMatrix& X, const Clique& c) {
  Mat out(c.size(), c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    check_index(c[a], X.n());
    for (std::size_t b = 0; b <= a; ++b) out(a, b) = out(b, a) = X.get(c[a], c[b]);
  }
  return out;
}

Mat extract(const Mat& X, const Clique& c) {
  Mat out(c.size(), c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    check_index(c[a], static_cast<int>(X.rows()));
    for (std::size_t b = 0; b < c.size(); ++b) out(a, b) = X(c[a], c[b]);
  }
  return out;
}

SparseSymMatrix inflate(const Mat& Y, const Clique& c, int n) {
  if (Y.rows() != static_cast<long>(c.size()) || Y.cols() != Y.rows())
    throw DimensionMismatch("inflate: block size differs from clique size");
  SparseSymMatrix m{SparsityPattern::from_cliques(n, {c})};
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a; b < c.size(); ++b) m.set(c[a], c[b], Y(a, b));
  return m;
}

void inflate_add(Mat& acc, const Mat& Y, const Clique& c) {
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) acc(c[a], c[b]) += Y(a, b);
}

CholeskyFactor sparse_cholesky(const SparseSymMatrix& Z, const Ordering& ord) {
  const int n = Z.n();
  Graph g = Z.pattern().graph();
  if (!verify_peo(g, ord)) throw NotPerfectOrdering();
  auto pos = ord.positions();
  const double tol = 1e-8 * std::max(1.0, Z.max_abs());

  CholeskyFactor f;
  f.perm = ord;
  f.pattern = Z.pattern();
  f.rows.assign(n, {});
  // work matrix in permuted coordinates; only pattern entries ever become nonzero
  Mat W = Mat::Zero(n, n);
  for (auto& [k, v] : Z.values()) {
    int a = pos[k.first], b = pos[k.second];
    W(std::max(a, b), std::min(a, b)) = v;
  }
  for (int j = 0; j < n; ++j) {
    for (int u : g.adj(ord.perm[j]))
      if (pos[u] > j) f.rows[j].push_back(pos[u]);
    std::sort(f.rows[j].begin(), f.rows[j].end());
  }
  f.L = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = W(j, j);
    const auto& rows = f.rows[j];
    if (d < -tol)
      throw NotPositiveSemidefinite("negative pivot " + format_double(d) + " at vertex " +
                                    std::to_string(ord.perm[j] + 1));
    if (d <= tol) {
      // zero pivot: the column must vanish for a PSD matrix
      for (int i : rows) {
        double bound = 10.0 * std::sqrt(tol * std::max(std::abs(W(i, i)), tol));
        if (std::abs(W(i, j)) > bound)
          throw NotPositiveSemidefinite("zero pivot with nonzero column at vertex " +
                                        std::to_string(ord.perm[j] + 1));
      }
      continue;
    }
    double ljj = std::sqrt(d);
    f.L(j, j) = ljj;
    for (int i : rows) f.L(i, j) = W(i, j) / ljj;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b)
        W(rows[a], rows[b]) -= f.L(rows[a], j) * f.L(rows[b], j);
  }
  return f;
}

namespace {

struct LiftedInput {
  CliqueSet cliques;
  Ordering ord;
};

LiftedInput lift_input(const CliqueSet& cs, const Ordering& ord, const std::optional<Partition>& part) {
  if (!part) return {cs, ord};
  return {lift_cliques(cs, *part), lift_ordering(ord, *part)};
}

void check_support_in(const SparseSymMatrix& Z, const SparsityPattern& p) {
  if (Z.n() != p.n()) throw DimensionMismatch("matrix and clique set dimensions differ");
  for (auto& [k, v] : Z.values())
    if (v != 0.0 && !p.contains(k.first, k.second))
      throw NotChordal("entry (" + std::to_string(k.first + 1) + "," +
                       std::to_string(k.second + 1) + ") lies outside every clique");
}

}  // namespace

CliqueDecomposition chordal_decompose(const SparseSymMatrix& Z, const CliqueSet& cs,
                                      const Ordering& ord, const std::optional<Partition>& part) {
  auto in = lift_input(cs, ord, part);
  SparsityPattern pat = SparsityPattern::from_cliques(Z.n(), in.cliques);
  check_support_in(Z, pat);
  if (in.ord.size() != Z.n()) throw DimensionMismatch("ordering size differs from matrix size");
  SparseSymMatrix Zp(pat);
  for (auto& [k, v] : Z.values()) Zp.set(k.first, k.second, v);
  CholeskyFactor f = sparse_cholesky(Zp, in.ord);

  CliqueDecomposition out;
  out.cliques = in.cliques;
  for (const auto& c : in.cliques) out.terms.push_back(Mat::Zero(c.size(), c.size()));
  const double eps = 1e-14 * std::max(1.0, Z.max_abs());
  const int n = Z.n();
  const auto pos = in.ord.positions();
  for (int j = 0; j < n; ++j) {
    if (f.L(j, j) == 0.0) continue;
    // numeric row set of column j, in original vertex labels
    std::vector<int> rows{in.ord.perm[j]};
    for (int i : f.rows[j])
      if (std::abs(f.L(i, j)) > eps) rows.push_back(in.ord.perm[i]);
    std::vector<int> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    int home = -1;
    for (std::size_t k = 0; k < in.cliques.size() && home < 0; ++k)
      if (std::includes(in.cliques[k].begin(), in.cliques[k].end(), sorted.begin(), sorted.end()))
        home = static_cast<int>(k);
    if (home < 0)
      throw NotChordal("clique set does not cover the factor column of vertex " +
                       std::to_string(in.ord.perm[j] + 1));
    const Clique& c = in.cliques[home];
    Vec col = Vec::Zero(c.size());
    for (int i : rows) {
      auto it = std::lower_bound(c.begin(), c.end(), i);
      double v = i == in.ord.perm[j] ? f.L(j, j) : f.L(pos[i], j);
      col(it - c.begin()) = v;
    }
    out.terms[home].noalias() += col * col.transpose();
  }
  return out;
}

CliqueDecomposition chordal_decompose(const SparseSymMatrix& Z, const CliqueSet& cs) {
  Graph g = SparsityPattern::from_cliques(Z.n(), cs).graph();
  Ordering ord = mcs(g);
  if (!verify_peo(g, ord)) throw NotChordal("clique union graph is not chordal");
  return chordal_decompose(Z, cs, ord);
}

CompletionReport completion_check(const SparseSymMatrix& X, const CliqueSet& cs,
                                  const std::optional<Partition>& part) {
  CliqueSet cl = part ? lift_cliques(cs, *part) : cs;
  SparsityPattern pat = SparsityPattern::from_cliques(X.n(), cl);
  if (!is_chordal(pat.graph())) throw NotChordal("clique union graph is not chordal");
  check_support_in(X, pat);
  std::vector<Mat> blocks;
  for (const auto& c : cl) blocks.push_back(extract(X, c));
  CompletionReport r;
  r.min_eigs = min_eigenvalues(blocks, Exec::Parallel);
  r.feasible = true;
  double worst = 0;
  for (std::size_t k = 0; k < cl.size(); ++k) {
    double margin = r.min_eigs[k] / psd_tolerance(blocks[k]);
    if (r.min_eigs[k] < -psd_tolerance(blocks[k])) r.feasible = false;
    if (r.worst_clique < 0 || margin < worst) {
      worst = margin;
      r.worst_clique = static_cast<int>(k);
    }
  }
  return r;
}

// Clique-tree fill, root first: every clique meets the union of the earlier
// ones exactly in its separator, so X_UV = X_US X_SS⁺ X_SV fills the new rows.
Mat max_det_complete(const SparseSymMatrix& X, const CliqueTree& ct, const CompletionOptions& opt) {
  if (opt.check_feasible) {
    auto rep = completion_check(X, ct.cliques);
    if (!rep.feasible)
      throw InfeasibleCompletion("clique " + std::to_string(rep.worst_clique + 1) +
                                 " has min eigenvalue " +
                                 format_double(rep.min_eigs[rep.worst_clique]));
  }
  const int n = X.n();
  Mat M = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) M(i, i) = X.get(i, i);
  std::vector<char> known(n, 0);
  for (int k : ct.preorder()) {
    const Clique& c = ct.cliques[k];
    for (int a : c)
      for (int b : c) M(a, b) = X.get(a, b);
    if (ct.parent[k] >= 0) {
      const Clique& s = ct.separators[k];
      std::vector<int> u, v;
      for (int a : c)
        if (!std::binary_search(s.begin(), s.end(), a)) u.push_back(a);
      for (int a = 0; a < n; ++a)
        if (known[a] && !std::binary_search(s.begin(), s.end(), a)) v.push_back(a);
      if (!u.empty() && !v.empty() && !s.empty()) {
        Mat Xus(u.size(), s.size()), Xsv(s.size(), v.size());
        for (std::size_t i = 0; i < u.size(); ++i)
          for (std::size_t j = 0; j < s.size(); ++j) Xus(i, j) = M(u[i], s[j]);
        for (std::size_t i = 0; i < s.size(); ++i)
          for (std::size_t j = 0; j < v.size(); ++j) Xsv(i, j) = M(s[i], v[j]);
        Mat fill = Xus * sym_pinv(extract(M, s)) * Xsv;
        for (std::size_t i = 0; i < u.size(); ++i)
          for (std::size_t j = 0; j < v.size(); ++j) M(u[i], v[j]) = M(v[j], u[i]) = fill(i, j);
      }
    }
    for (int a : c) known[a] = 1;
  }
  return M;
}

double barrier_value(const SparseSymMatrix& Z, const CholeskyFactor& fac) {
  const double tol = 1e-8 * std::max(1.0, Z.max_abs());
  double s = 0;
  for (int j = 0; j < fac.L.rows(); ++j) {
    double l = fac.L(j, j);
    if (!(l * l > tol)) throw NotPositiveDefinite("matrix is not positive definite");
    s += std::log(l);
  }
  return -2.0 * s;
}

double barrier_value(const SparseSymMatrix& Z) {
  Graph g = Z.pattern().graph();
  Ordering ord = mcs(g);
  if (!verify_peo(g, ord)) {
    Graph ext = chordal_extension(g, ExtensionHeuristic::MinDegree);
    SparseSymMatrix Ze(SparsityPattern::from_graph(ext));
    for (auto& [k, v] : Z.values()) Ze.set(k.first, k.second, v);
    return barrier_value(Ze);
  }
  try {
    return barrier_value(Z, sparse_cholesky(Z, ord));
  } catch (const NotPositiveSemidefinite&) {
    throw NotPositiveDefinite("matrix is not positive definite");
  }
}

// Takahashi recurrence on the zero-fill factor of a chordal extension.
SparseSymMatrix projected_inverse(const SparseSymMatrix& Z) {
  const int n = Z.n();
  Graph g = Z.pattern().graph();
  if (!is_chordal(g)) g = chordal_extension(g, ExtensionHeuristic::MinDegree);
  SparseSymMatrix Ze(SparsityPattern::from_graph(g));
  for (auto& [k, v] : Z.values()) Ze.set(k.first, k.second, v);
  Ordering ord = mcs(g);
  CholeskyFactor f;
  try {
    f = sparse_cholesky(Ze, ord);
  } catch (const NotPositiveSemidefinite&) {
    throw NotPositiveDefinite("matrix is not positive definite");
  }
  const double tol = 1e-8 * std::max(1.0, Z.max_abs());
  Mat Y = Mat::Zero(n, n);
  for (int j = n - 1; j >= 0; --j) {
    double ljj = f.L(j, j);
    if (!(ljj * ljj > tol)) throw NotPositiveDefinite("matrix is not positive definite");
    const auto& rows = f.rows[j];
    for (int i : rows) {
      double s = 0;
      for (int k : rows) s += (f.L(k, j) / ljj) * Y(std::max(i, k), std::min(i, k));
      Y(i, j) = -s;
    }
    double s = 0;
    for (int k : rows) s += (f.L(k, j) / ljj) * Y(k, j);
    Y(j, j) = 1.0 / (ljj * ljj) - s;
  }
  auto pos = ord.positions();
  SparseSymMatrix out(Z.pattern());
  for (int i = 0; i < n; ++i) out.set(i, i, Y(pos[i], pos[i]));
  for (auto [i, j] : Z.pattern().edges())
    out.set(i, j, Y(std::max(pos[i], pos[j]), std::min(pos[i], pos[j])));
  return out;
}

SparseSymMatrix read_matrix(std::istream& in) {
  std::string line;
  int lineno = 0, n = -1;
  long nnz = -1;
  std::vector<std::tuple<int, int, double>> t;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string probe;
    if (!(ss >> probe)) continue;
    ss.clear();
    ss.str(line);
    if (n < 0) {
      if (!(ss >> n >> nnz) || n < 0 || nnz < 0) throw ParseError("expected header 'n nnz'", lineno);
      continue;
    }
    int i = 0, j = 0;
    double v = 0;
    std::string extra;
    if (!(ss >> i >> j >> v) || (ss >> extra)) throw ParseError("expected 'i j value'", lineno);
    if (i < 1 || j < 1 || i > n || j > n) throw ParseError("index out of range", lineno);
    if (i > j) throw ParseError("entries must satisfy i <= j", lineno);
    if (!seen.insert({i, j}).second) throw ParseError("duplicate entry", lineno);
    t.emplace_back(i - 1, j - 1, v);
  }
  if (n < 0) throw ParseError("empty matrix file", 0);
  if (static_cast<long>(t.size()) != nnz) throw ParseError("entry count differs from header", lineno);
  return SparseSymMatrix::from_triplets(n, t);
}

SparseSymMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0);
  return read_matrix(f);
}

void write_matrix(std::ostream& out, const SparseSymMatrix& m) {
  out << m.n() << ' ' << m.values().size() << '\n';
  for (auto& [k, v] : m.values())
    out << k.first + 1 << ' ' << k.second + 1 << ' ' << format_double(v) << '\n';
}

}  // namespace csdp
