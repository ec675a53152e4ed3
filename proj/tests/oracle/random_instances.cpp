#include "random_instances.hpp"

#include <algorithm>

namespace csdp::gen {

double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

Graph random_chordal_graph(int n, Rng& rng, double p_keep, double p_isolated) {
  std::vector<std::vector<int>> home(n);  // a clique containing v, v included
  std::vector<std::pair<int, int>> edges;
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  for (int u = 0; u < n; ++u) {
    home[u] = {u};
    if (u == 0 || uniform(rng, 0, 1) < p_isolated) continue;
    int v = uniform_int(rng, 0, u - 1);
    for (int w : home[v])
      if (w == v || uniform(rng, 0, 1) < p_keep) {
        home[u].push_back(w);
        edges.emplace_back(label[u], label[w]);
      }
  }
  return Graph::from_edges(n, edges);
}

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform(rng, 0, 1) < p) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

Mat random_symmetric(int k, Rng& rng) {
  Mat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = uniform(rng);
  return m;
}

Mat random_psd(int k, Rng& rng, int rank, double shift) {
  int r = rank < 0 ? k : rank;
  Mat g(k, r);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = uniform(rng);
  return g * g.transpose() + shift * Mat::Identity(k, k);
}

SparseSymMatrix random_psd_on_cliques(int n, const CliqueSet& cs, Rng& rng, int rank,
                                      double shift) {
  Mat acc = Mat::Zero(n, n);
  for (const auto& c : cs) {
    int k = static_cast<int>(c.size());
    inflate_add(acc, random_psd(k, rng, rank < 0 ? k : std::min(rank, k)), c);
  }
  acc += shift * Mat::Identity(n, n);
  return project_pattern(acc, SparsityPattern::from_cliques(n, cs));
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

SdpProblem random_sdp(const Graph& g, int m, Rng& rng, double density) {
  const int n = g.n();
  auto edges = g.edges();
  SdpProblem p;
  p.n = n;
  std::vector<std::tuple<int, int, double>> c;
  std::vector<double> row(n, 0.0);
  for (auto [i, j] : edges) {
    double v = uniform(rng);
    c.emplace_back(i, j, v);
    row[i] += std::abs(v);
    row[j] += std::abs(v);
  }
  for (int i = 0; i < n; ++i) c.emplace_back(i, i, row[i] + uniform(rng, 0.5, 1.5));
  p.C = SparseSymMatrix::from_triplets(n, c);
  p.b.resize(m);
  for (int k = 0; k < m; ++k) {
    std::vector<std::tuple<int, int, double>> t;
    double trace = 0.0;
    for (int i = 0; i < n; ++i)
      if (uniform(rng, 0, 1) < density) {
        double v = uniform(rng);
        t.emplace_back(i, i, v);
        trace += v;
      }
    for (auto [i, j] : edges)
      if (uniform(rng, 0, 1) < density) t.emplace_back(i, j, uniform(rng));
    if (t.empty()) {
      t.emplace_back(k % n, k % n, 1.0);
      trace = 1.0;
    }
    p.A.push_back(SparseSymMatrix::from_triplets(n, t));
    p.b[k] = trace;
  }
  return p;
}

}  // namespace csdp::gen
