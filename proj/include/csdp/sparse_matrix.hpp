#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "csdp/dense.hpp"
#include "csdp/graph.hpp"
#include "csdp/partition.hpp"

namespace csdp {

// Off-diagonal pairs (i<j); the diagonal is always part of the pattern.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  explicit SparsityPattern(int n) : n_(n) {}
  SparsityPattern(int n, std::vector<std::pair<int, int>> edges);
  static SparsityPattern from_graph(const Graph& g);
  static SparsityPattern from_cliques(int n, const CliqueSet& cs);
  static SparsityPattern complete(int n);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool contains(int i, int j) const;
  Graph graph() const { return Graph::from_edges(n_, edges_); }
  SparsityPattern unite(const SparsityPattern& o) const;
  bool subset_of(const SparsityPattern& o) const;

  bool operator==(const SparsityPattern& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

class SparseSymMatrix {
 public:
  using Key = std::pair<int, int>;  // i <= j

  SparseSymMatrix() = default;
  explicit SparseSymMatrix(int n) : pattern_(n) {}
  explicit SparseSymMatrix(SparsityPattern p) : pattern_(std::move(p)) {}
  // Pattern is the support of the triplets; (i,j) and (j,i) are the same entry.
  static SparseSymMatrix from_triplets(int n, const std::vector<std::tuple<int, int, double>>& t);
  static SparseSymMatrix identity(int n);

  int n() const { return pattern_.n(); }
  const SparsityPattern& pattern() const { return pattern_; }
  const std::map<Key, double>& values() const { return values_; }

  double get(int i, int j) const;
  // Throws DimensionMismatch for off-pattern entries.
  void set(int i, int j, double v);
  void add(int i, int j, double v);
  // Widen the pattern; values untouched.
  void extend_pattern(const SparsityPattern& p);
  // Support pattern (entries with nonzero value).
  SparsityPattern support() const;

  Mat to_dense() const;
  double max_abs() const;
  // ⟨this, other⟩ in the trace inner product
  double dot(const SparseSymMatrix& o) const;
  double dot(const Mat& dense) const;

  bool operator==(const SparseSymMatrix& o) const {
    return pattern_ == o.pattern_ && values_ == o.values_;
  }

 private:
  SparsityPattern pattern_;
  std::map<Key, double> values_;
};

struct CholeskyFactor {
  Ordering perm;
  Mat L;                               // lower triangular, permuted coordinates
  std::vector<std::vector<int>> rows;  // structural rows below the diagonal per column
  SparsityPattern pattern;             // pattern the factor was computed on (original coords)
};

struct CliqueDecomposition {
  CliqueSet cliques;
  std::vector<Mat> terms;
};

struct CompletionReport {
  bool feasible = false;
  std::vector<double> min_eigs;
  int worst_clique = -1;
};

SparseSymMatrix project_pattern(const Mat& dense, const SparsityPattern& p);
Mat extract(const SparseSymMatrix& X, const Clique& c);
Mat extract(const Mat& X, const Clique& c);
SparseSymMatrix inflate(const Mat& Y, const Clique& c, int n);
// Add E_cᵀ Y E_c into a dense accumulator.
void inflate_add(Mat& acc, const Mat& Y, const Clique& c);

// Zero fill-in Cholesky along ord, which must be a PEO for Z's pattern.
CholeskyFactor sparse_cholesky(const SparseSymMatrix& Z, const Ordering& ord);

// Constructive clique decomposition; with a partition, cs and ord are block level.
CliqueDecomposition chordal_decompose(const SparseSymMatrix& Z, const CliqueSet& cs,
                                      const Ordering& ord,
                                      const std::optional<Partition>& part = std::nullopt);
// Finds a PEO of the clique-union graph itself.
CliqueDecomposition chordal_decompose(const SparseSymMatrix& Z, const CliqueSet& cs);

CompletionReport completion_check(const SparseSymMatrix& X, const CliqueSet& cs,
                                  const std::optional<Partition>& part = std::nullopt);

struct CompletionOptions {
  bool check_feasible = true;
};
Mat max_det_complete(const SparseSymMatrix& X, const CliqueTree& ct,
                     const CompletionOptions& opt = {});

double barrier_value(const SparseSymMatrix& Z, const CholeskyFactor& fac);
double barrier_value(const SparseSymMatrix& Z);
SparseSymMatrix projected_inverse(const SparseSymMatrix& Z);

// `n nnz` header then `i j value`, i<=j, 1-based.
SparseSymMatrix read_matrix(std::istream& in);
SparseSymMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const SparseSymMatrix& m);

}  // namespace csdp
