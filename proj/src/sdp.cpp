#include "csdp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "csdp/errors.hpp"

namespace csdp {

void SdpProblem::validate() const {
  if (C.n() != n) throw DimensionMismatch("C has size " + std::to_string(C.n()) + ", expected " + std::to_string(n));
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i].n() != n)
      throw DimensionMismatch("A_" + std::to_string(i + 1) + " has size " + std::to_string(A[i].n()));
  if (b.size() != m()) throw DimensionMismatch("b has length " + std::to_string(b.size()) + ", expected " + std::to_string(m()));
  int total = 0;
  for (int s : blocks()) {
    if (s == 0) throw DimensionMismatch("zero block size");
    total += std::abs(s);
  }
  if (total != n) throw DimensionMismatch("block sizes sum to " + std::to_string(total) + ", expected " + std::to_string(n));
}

namespace {

std::map<SparseSymMatrix::Key, double> nonzeros(const SparseSymMatrix& m) {
  std::map<SparseSymMatrix::Key, double> out;
  for (const auto& [k, v] : m.values())
    if (v != 0.0) out.emplace(k, v);
  return out;
}

}  // namespace

bool same_data(const SdpProblem& a, const SdpProblem& b) {
  if (a.n != b.n || a.m() != b.m() || a.blocks() != b.blocks()) return false;
  if (a.b.size() != b.b.size()) return false;
  for (int i = 0; i < a.b.size(); ++i)
    if (a.b[i] != b.b[i]) return false;
  if (nonzeros(a.C) != nonzeros(b.C)) return false;
  for (int i = 0; i < a.m(); ++i)
    if (nonzeros(a.A[i]) != nonzeros(b.A[i])) return false;
  return true;
}

SparsityPattern aggregate_pattern(const SdpProblem& p) {
  SparsityPattern out = p.C.support();
  for (const auto& a : p.A) out = out.unite(a.support());
  if (out.n() != p.n) out = SparsityPattern(p.n).unite(out);
  return out;
}

namespace {

// Chordal graphs are kept as they are; heuristics only run on nonchordal ones.
Graph extend(const Graph& g, ExtensionHeuristic ext) {
  if (is_chordal(g)) return g;
  return chordal_extension(g, ext);
}

DecomposedSdp decompose(const SdpProblem& p, ExtensionHeuristic ext, DecompositionMode mode) {
  p.validate();
  DecomposedSdp d;
  d.base = p;
  d.mode = mode;
  Graph g = extend(aggregate_pattern(p).graph(), ext);
  d.pattern = SparsityPattern::from_graph(g);
  d.cliques = maximal_cliques(g);
  std::sort(d.cliques.begin(), d.cliques.end());
  d.tree = clique_tree(d.cliques);
  return d;
}

int first_owner(const CliqueSet& cs, int i, int j) {
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    if (std::binary_search(c.begin(), c.end(), i) && std::binary_search(c.begin(), c.end(), j))
      return static_cast<int>(k);
  }
  return -1;
}

int local_index(const Clique& c, int v) {
  return static_cast<int>(std::lower_bound(c.begin(), c.end(), v) - c.begin());
}

}  // namespace

DecomposedSdp domain_decompose(const SdpProblem& p, ExtensionHeuristic ext) {
  return decompose(p, ext, DecompositionMode::Domain);
}

DecomposedSdp range_decompose(const SdpProblem& p, ExtensionHeuristic ext) {
  return decompose(p, ext, DecompositionMode::Range);
}

ConvertedSdp clique_tree_convert(const SdpProblem& p, ExtensionHeuristic ext, bool drop_redundant) {
  DecomposedSdp d = decompose(p, ext, DecompositionMode::Domain);
  ConvertedSdp out;
  out.cliques = d.cliques;
  out.tree = d.tree;
  const int K = static_cast<int>(d.cliques.size());
  std::vector<int> offset(K + 1, 0);
  for (int k = 0; k < K; ++k) {
    out.cone_sizes.push_back(static_cast<int>(d.cliques[k].size()));
    offset[k + 1] = offset[k] + out.cone_sizes.back();
  }
  const int N = offset[K];
  // global (i,j) of the base -> entry inside the owning clique's block
  auto place = [&](const SparseSymMatrix& src) {
    std::vector<std::tuple<int, int, double>> t;
    for (const auto& [key, v] : src.values()) {
      if (v == 0.0) continue;
      int k = first_owner(d.cliques, key.first, key.second);
      int a = offset[k] + local_index(d.cliques[k], key.first);
      int b = offset[k] + local_index(d.cliques[k], key.second);
      t.emplace_back(a, b, v);
    }
    return SparseSymMatrix::from_triplets(N, t);
  };

  SdpProblem& q = out.data;
  q.n = N;
  q.block_structure = out.cone_sizes;
  q.C = place(p.C);
  for (const auto& a : p.A) q.A.push_back(place(a));
  out.original_rows = p.m();

  std::vector<std::pair<int, int>> pairs;  // (k, l), k < l
  if (drop_redundant) {
    for (int k = 0; k < K; ++k)
      if (d.tree.parent[k] >= 0) pairs.emplace_back(std::min(k, d.tree.parent[k]), std::max(k, d.tree.parent[k]));
  } else {
    for (int k = 0; k < K; ++k)
      for (int l = k + 1; l < K; ++l) pairs.emplace_back(k, l);
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<double> rhs(p.b.data(), p.b.data() + p.b.size());
  const double h = 1.0 / std::sqrt(2.0);
  // rows ordered by smaller clique, then overlap entry, then the other clique
  for (int k = 0; k < K; ++k) {
    std::vector<std::tuple<int, int, int>> rows;  // (i, j, l) in global coordinates
    for (const auto& [a, l] : pairs) {
      if (a != k) continue;
      Clique ov;
      std::set_intersection(d.cliques[k].begin(), d.cliques[k].end(), d.cliques[l].begin(),
                            d.cliques[l].end(), std::back_inserter(ov));
      for (std::size_t x = 0; x < ov.size(); ++x)
        for (std::size_t y = x; y < ov.size(); ++y) rows.emplace_back(ov[x], ov[y], l);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [i, j, l] : rows) {
      int ak = offset[k] + local_index(d.cliques[k], i), bk = offset[k] + local_index(d.cliques[k], j);
      int al = offset[l] + local_index(d.cliques[l], i), bl = offset[l] + local_index(d.cliques[l], j);
      double w = (i == j) ? 1.0 : h;
      out.consistency_rows.push_back(q.m());
      q.A.push_back(SparseSymMatrix::from_triplets(N, {{ak, bk, w}, {al, bl, -w}}));
      rhs.push_back(0.0);
    }
  }
  q.b = Eigen::Map<Vec>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return out;
}

SparseSymMatrix assemble_from_cliques(const ConvertedSdp& c, const std::vector<Mat>& blocks, int n) {
  if (blocks.size() != c.cliques.size()) throw DimensionMismatch("one block per clique expected");
  SparseSymMatrix X(SparsityPattern::from_cliques(n, c.cliques));
  for (std::size_t k = 0; k < c.cliques.size(); ++k) {
    const auto& cl = c.cliques[k];
    if (blocks[k].rows() != static_cast<Eigen::Index>(cl.size()))
      throw DimensionMismatch("block size does not match clique");
    for (std::size_t a = 0; a < cl.size(); ++a)
      for (std::size_t b = a; b < cl.size(); ++b)
        if (first_owner(c.cliques, cl[a], cl[b]) == static_cast<int>(k)) X.set(cl[a], cl[b], blocks[k](a, b));
  }
  return X;
}

namespace {

// Rows as dense vectors over the union of supports; off-diagonals weighted by √2.
Mat row_matrix(const SdpProblem& p) {
  std::map<SparseSymMatrix::Key, int> col;
  for (const auto& a : p.A)
    for (const auto& [k, v] : a.values())
      if (v != 0.0) col.emplace(k, 0);
  int c = 0;
  for (auto& [k, idx] : col) idx = c++;
  Mat M = Mat::Zero(p.m(), c);
  for (int i = 0; i < p.m(); ++i)
    for (const auto& [k, v] : p.A[i].values())
      if (v != 0.0) M(i, col.at(k)) = (k.first == k.second) ? v : std::sqrt(2.0) * v;
  return M;
}

// Greedy in row order: a row is kept when it is independent of the rows kept before it.
std::vector<int> independent_rows(const Mat& M, double tol) {
  std::vector<int> kept;
  std::vector<Vec> basis;
  for (int i = 0; i < M.rows(); ++i) {
    Vec r = M.row(i).transpose();
    double norm = r.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) r -= q.dot(r) * q;
    if (r.norm() > tol * std::max(1.0, norm)) {
      basis.push_back(r / r.norm());
      kept.push_back(i);
    }
  }
  return kept;
}

}  // namespace

std::vector<int> dependent_rows(const SdpProblem& p, double tol) {
  Mat M = row_matrix(p);
  auto kept = independent_rows(M, tol);
  std::vector<int> out;
  std::size_t j = 0;
  for (int i = 0; i < p.m(); ++i) {
    if (j < kept.size() && kept[j] == i) ++j;
    else out.push_back(i);
  }
  return out;
}

Presolved remove_dependent_rows(const SdpProblem& p, double tol) {
  p.validate();
  Mat M = row_matrix(p);
  Presolved out;
  out.kept = independent_rows(M, tol);
  std::size_t j = 0;
  for (int i = 0; i < p.m(); ++i) {
    if (j < out.kept.size() && out.kept[j] == i) ++j;
    else out.dropped.push_back(i);
  }
  if (!out.dropped.empty()) {
    Mat K(M.cols(), static_cast<Eigen::Index>(out.kept.size()));
    Vec bk(static_cast<Eigen::Index>(out.kept.size()));
    for (std::size_t a = 0; a < out.kept.size(); ++a) {
      K.col(a) = M.row(out.kept[a]).transpose();
      bk[a] = p.b[out.kept[a]];
    }
    Eigen::ColPivHouseholderQR<Mat> qr(K);
    for (int i : out.dropped) {
      Vec coef = qr.solve(Vec(M.row(i).transpose()));
      double implied = coef.dot(bk);
      if (std::abs(implied - p.b[i]) > 1e-7 * (1.0 + std::abs(p.b[i]) + bk.cwiseAbs().maxCoeff()))
        throw Error("constraint " + std::to_string(i + 1) + " is dependent but inconsistent");
    }
  }
  out.problem.n = p.n;
  out.problem.C = p.C;
  out.problem.block_structure = p.block_structure;
  out.problem.b.resize(static_cast<Eigen::Index>(out.kept.size()));
  for (std::size_t a = 0; a < out.kept.size(); ++a) {
    out.problem.A.push_back(p.A[out.kept[a]]);
    out.problem.b[a] = p.b[out.kept[a]];
  }
  return out;
}

// ---- SDPA ----

namespace {

struct BlockMap {
  std::vector<int> block_of, local_of, sizes;
};

BlockMap block_map(const SdpProblem& p) {
  BlockMap bm;
  bm.sizes = p.blocks();
  int g = 0;
  for (std::size_t k = 0; k < bm.sizes.size(); ++k)
    for (int a = 0; a < std::abs(bm.sizes[k]); ++a, ++g) {
      bm.block_of.push_back(static_cast<int>(k));
      bm.local_of.push_back(a);
    }
  return bm;
}

void write_entries(std::ostream& out, int mat, const SparseSymMatrix& M, const BlockMap& bm) {
  // sort by (block, local i, local j); global order already agrees since blocks are contiguous
  for (const auto& [k, v] : M.values()) {
    if (v == 0.0) continue;
    int bi = bm.block_of[k.first], bj = bm.block_of[k.second];
    if (bi != bj) throw DimensionMismatch("entry (" + std::to_string(k.first + 1) + "," + std::to_string(k.second + 1) + ") crosses blocks");
    if (bm.sizes[bi] < 0 && k.first != k.second)
      throw DimensionMismatch("off-diagonal entry in a diagonal block");
    out << mat << ' ' << bi + 1 << ' ' << bm.local_of[k.first] + 1 << ' ' << bm.local_of[k.second] + 1 << ' '
        << format_double(-v) << '\n';
  }
}

}  // namespace

void sdpa_write(std::ostream& out, const SdpProblem& p) {
  p.validate();
  BlockMap bm = block_map(p);
  out << p.m() << '\n' << bm.sizes.size() << '\n';
  for (std::size_t k = 0; k < bm.sizes.size(); ++k) out << (k ? " " : "") << bm.sizes[k];
  out << '\n';
  for (int i = 0; i < p.m(); ++i) out << (i ? " " : "") << format_double(-p.b[i]);
  out << '\n';
  write_entries(out, 0, p.C, bm);
  for (int i = 0; i < p.m(); ++i) write_entries(out, i + 1, p.A[i], bm);
}

void sdpa_write_file(const std::string& path, const SdpProblem& p) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open " + path + " for writing");
  sdpa_write(f, p);
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::string s = line;
  for (char& c : s)
    if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')' || c == '\t' || c == '\r') c = ' ';
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

long parse_int(const std::string& t, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + t + "'", line);
  }
  if (used != t.size()) throw ParseError("expected an integer, got '" + t + "'", line);
  return v;
}

double parse_real(const std::string& t, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + t + "'", line);
  }
  if (used != t.size()) throw ParseError("expected a number, got '" + t + "'", line);
  return v;
}

}  // namespace

SdpProblem sdpa_read(std::istream& in) {
  std::string line;
  int line_no = 0;
  // next non-comment, non-blank line split into tokens
  auto next = [&](std::vector<std::string>& toks) {
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '"' || line[first] == '*') continue;
      toks = split_tokens(line);
      if (!toks.empty()) return true;
    }
    return false;
  };
  std::vector<std::string> toks;
  if (!next(toks)) throw ParseError("missing constraint count", line_no + 1);
  long m = parse_int(toks[0], line_no);
  if (m < 0) throw ParseError("negative constraint count", line_no);
  if (!next(toks)) throw ParseError("missing block count", line_no + 1);
  long nb = parse_int(toks[0], line_no);
  if (nb <= 0) throw ParseError("block count must be positive", line_no);

  std::vector<int> sizes;
  while (static_cast<long>(sizes.size()) < nb) {
    if (!next(toks)) throw ParseError("missing block sizes", line_no + 1);
    for (const auto& t : toks) {
      if (static_cast<long>(sizes.size()) == nb) throw ParseError("too many block sizes", line_no);
      long s = parse_int(t, line_no);
      if (s == 0) throw ParseError("zero block size", line_no);
      sizes.push_back(static_cast<int>(s));
    }
  }
  std::vector<double> c;
  while (static_cast<long>(c.size()) < m) {
    if (!next(toks)) throw ParseError("missing objective vector", line_no + 1);
    for (const auto& t : toks) {
      if (static_cast<long>(c.size()) == m) throw ParseError("too many objective entries", line_no);
      c.push_back(parse_real(t, line_no));
    }
  }

  std::vector<int> offset(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k) offset[k + 1] = offset[k] + std::abs(sizes[k]);
  const int n = offset.back();
  std::vector<std::map<SparseSymMatrix::Key, double>> mats(m + 1);
  while (next(toks)) {
    if (toks.size() != 5) throw ParseError("expected 'matrix block i j value'", line_no);
    long mat = parse_int(toks[0], line_no), blk = parse_int(toks[1], line_no);
    long i = parse_int(toks[2], line_no), j = parse_int(toks[3], line_no);
    double v = parse_real(toks[4], line_no);
    if (mat < 0 || mat > m) throw ParseError("matrix index out of range", line_no);
    if (blk < 1 || blk > nb) throw ParseError("block index out of range", line_no);
    int bs = sizes[blk - 1];
    if (i < 1 || j < 1 || i > std::abs(bs) || j > std::abs(bs)) throw ParseError("entry index out of range", line_no);
    if (bs < 0 && i != j) throw ParseError("off-diagonal entry in a diagonal block", line_no);
    if (i > j) std::swap(i, j);
    SparseSymMatrix::Key key{offset[blk - 1] + static_cast<int>(i) - 1, offset[blk - 1] + static_cast<int>(j) - 1};
    if (!mats[mat].emplace(key, v).second) throw ParseError("duplicate entry", line_no);
  }
  auto to_sparse = [&](const std::map<SparseSymMatrix::Key, double>& e) {
    std::vector<std::tuple<int, int, double>> t;
    for (const auto& [k, v] : e)
      if (v != 0.0) t.emplace_back(k.first, k.second, -v);
    return SparseSymMatrix::from_triplets(n, t);
  };
  SdpProblem p;
  p.n = n;
  p.block_structure = sizes;
  p.C = to_sparse(mats[0]);
  for (long i = 1; i <= m; ++i) p.A.push_back(to_sparse(mats[i]));
  p.b.resize(m);
  for (long i = 0; i < m; ++i) p.b[i] = -c[i];
  return p;
}

SdpProblem sdpa_read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return sdpa_read(f);
}

// ---- applications ----

SdpProblem qcqp_relax(const QcqpData& d) {
  const std::size_t rows = d.P.size();
  if (rows == 0) throw DimensionMismatch("QCQP needs an objective");
  if (d.q.size() != rows || d.r.size() != rows || d.equality.size() != rows)
    throw DimensionMismatch("P, q, r and equality must have the same length");
  for (std::size_t i = 0; i < rows; ++i)
    if (d.P[i].rows() != d.n || d.P[i].cols() != d.n || d.q[i].size() != d.n)
      throw DimensionMismatch("QCQP term " + std::to_string(i) + " has wrong size");
  int slacks = 0;
  for (std::size_t i = 1; i < rows; ++i)
    if (!d.equality[i]) ++slacks;
  const int N = d.n + 1 + slacks;

  // ⟨[[r, qᵀ], [q, P]], Z⟩
  auto lifted = [&](std::size_t i) {
    std::vector<std::tuple<int, int, double>> t;
    if (d.r[i] != 0.0) t.emplace_back(0, 0, d.r[i]);
    for (int a = 0; a < d.n; ++a)
      if (d.q[i][a] != 0.0) t.emplace_back(0, a + 1, d.q[i][a]);
    for (int a = 0; a < d.n; ++a)
      for (int b = a; b < d.n; ++b) {
        double v = 0.5 * (d.P[i](a, b) + d.P[i](b, a));
        if (v != 0.0) t.emplace_back(a + 1, b + 1, v);
      }
    return t;
  };

  SdpProblem p;
  p.n = N;
  p.block_structure = {d.n + 1};
  if (slacks > 0) p.block_structure.push_back(-slacks);
  p.C = SparseSymMatrix::from_triplets(N, lifted(0));
  std::vector<double> b{1.0};
  p.A.push_back(SparseSymMatrix::from_triplets(N, {{0, 0, 1.0}}));
  int s = 0;
  for (std::size_t i = 1; i < rows; ++i) {
    auto t = lifted(i);
    if (!d.equality[i]) {
      t.emplace_back(d.n + 1 + s, d.n + 1 + s, 1.0);
      ++s;
    }
    p.A.push_back(SparseSymMatrix::from_triplets(N, t));
    b.push_back(0.0);
  }
  p.b = Eigen::Map<Vec>(b.data(), static_cast<Eigen::Index>(b.size()));
  return p;
}

SdpProblem gen_maxcut(const Mat& W) {
  if (W.rows() != W.cols()) throw DimensionMismatch("weight matrix must be square");
  const int n = static_cast<int>(W.rows());
  double tol = 1e-12 * std::max(1.0, max_abs(W));
  for (int i = 0; i < n; ++i) {
    if (W(i, i) != 0.0) throw Error("weight matrix must have a zero diagonal");
    for (int j = i + 1; j < n; ++j)
      if (std::abs(W(i, j) - W(j, i)) > tol) throw Error("weight matrix is not symmetric");
  }
  SdpProblem p;
  p.n = n;
  std::vector<std::tuple<int, int, double>> t;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (W(i, j) != 0.0) t.emplace_back(i, j, W(i, j));
  p.C = SparseSymMatrix::from_triplets(n, t);
  for (int i = 0; i < n; ++i) p.A.push_back(SparseSymMatrix::from_triplets(n, {{i, i, 1.0}}));
  p.b = Vec::Ones(n);
  return p;
}

Mat assemble_block_system(const BlockSystem& blocks, const Partition& sizes) {
  Mat A = Mat::Zero(sizes.n(), sizes.n());
  for (const auto& [ij, M] : blocks) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= sizes.blocks() || j >= sizes.blocks())
      throw DimensionMismatch("block index out of range");
    if (M.rows() != sizes.size(i) || M.cols() != sizes.size(j))
      throw DimensionMismatch("block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has wrong size");
    A.block(sizes.offset(i), sizes.offset(j), sizes.size(i), sizes.size(j)) = M;
  }
  return A;
}

SdpProblem gen_lyapunov(const BlockSystem& blocks, const Graph& network, const Partition& sizes, double margin) {
  if (network.n() != sizes.blocks()) throw DimensionMismatch("network and block sizes disagree");
  for (const auto& [ij, M] : blocks)
    if (ij.first != ij.second && !network.has_edge(ij.first, ij.second))
      throw DimensionMismatch("block (" + std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1) +
                              ") is not a network edge");
  Mat A = assemble_block_system(blocks, sizes);
  const int N = sizes.n();
  SdpProblem p;
  p.n = 2 * N;
  p.block_structure = {N, N};
  std::vector<std::tuple<int, int, double>> c;
  for (int i = 0; i < 2 * N; ++i) c.emplace_back(i, i, -margin);
  p.C = SparseSymMatrix::from_triplets(2 * N, c);
  // one variable per entry of each diagonal block of P
  for (int k = 0; k < sizes.blocks(); ++k)
    for (int a = 0; a < sizes.size(k); ++a)
      for (int b = a; b < sizes.size(k); ++b) {
        int ga = sizes.offset(k) + a, gb = sizes.offset(k) + b;
        Mat S = Mat::Zero(N, N);
        S(ga, gb) = S(gb, ga) = 1.0;
        Mat L = A.transpose() * S + S * A;
        std::vector<std::tuple<int, int, double>> t;
        t.emplace_back(ga, gb, -1.0);
        for (int i = 0; i < N; ++i)
          for (int j = i; j < N; ++j)
            if (L(i, j) != 0.0) t.emplace_back(N + i, N + j, L(i, j));
        p.A.push_back(SparseSymMatrix::from_triplets(2 * N, t));
      }
  p.b = Vec::Zero(p.m());
  return p;
}

Mat random_maxcut_weights(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat W = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < density) W(i, j) = W(j, i) = 1.0;
  return W;
}

NetworkInstance random_network(NetworkShape shape, int l, int max_block, double coupling, std::uint64_t seed,
                               bool unstable_hub) {
  if (l < 1 || max_block < 1) throw DimensionMismatch("network needs l >= 1 and block size >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> size(1, max_block);
  NetworkInstance out;
  std::vector<int> sz(l);
  for (auto& s : sz) s = size(rng);
  out.sizes = Partition(sz);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < l; ++i) {
    if (shape == NetworkShape::Star) edges.emplace_back(0, i);
    else edges.emplace_back(i - 1, i);
  }
  if (shape == NetworkShape::Cycle && l > 2) edges.emplace_back(0, l - 1);
  out.network = Graph::from_edges(l, edges);
  auto random_block = [&](int r, int c) {
    Mat M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = u(rng);
    return M;
  };
  for (int i = 0; i < l; ++i) {
    Mat M = random_block(sz[i], sz[i]);
    double shift = M.operatorNorm() + 1.0;
    bool flip = unstable_hub && i == 0;
    out.blocks[{i, i}] = flip ? Mat(M + shift * Mat::Identity(sz[i], sz[i]))
                              : Mat(M - shift * Mat::Identity(sz[i], sz[i]));
  }
  for (auto [i, j] : out.network.edges()) {
    out.blocks[{i, j}] = coupling * random_block(sz[i], sz[j]);
    out.blocks[{j, i}] = coupling * random_block(sz[j], sz[i]);
  }
  return out;
}

QcqpData random_qcqp(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), keep(0.0, 1.0);
  QcqpData d;
  d.n = n;
  auto sparse_sym = [&](double density) {
    Mat P = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (i == j || keep(rng) < density) P(i, j) = P(j, i) = u(rng);
    return P;
  };
  d.P.push_back(sparse_sym(0.3));
  d.q.push_back(Vec::NullaryExpr(n, [&]() { return u(rng); }));
  d.r.push_back(0.0);
  d.equality.push_back(false);
  // ‖x‖² ≤ n keeps the feasible set bounded
  d.P.push_back(Mat::Identity(n, n));
  d.q.push_back(Vec::Zero(n));
  d.r.push_back(-static_cast<double>(n));
  d.equality.push_back(false);
  // x = 0 is strictly feasible for every extra row
  for (int i = 0; i < m; ++i) {
    d.P.push_back(sparse_sym(0.3));
    d.q.push_back(Vec::NullaryExpr(n, [&]() { return u(rng); }));
    d.r.push_back(-1.0 - keep(rng));
    d.equality.push_back(false);
  }
  return d;
}

}  // namespace csdp
