#include "csdp/dense.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace csdp {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double psd_tolerance(const Mat& m) { return 1e-8 * std::max(1.0, max_abs(m)); }

double min_eigenvalue(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Mat& m) { return min_eigenvalue(m) >= -psd_tolerance(m); }

int numeric_rank(const Mat& m, double threshold) {
  if (m.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  int r = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) r += std::abs(es.eigenvalues()(i)) > threshold;
  return r;
}

Mat psd_project(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_project: matrix is not square");
  if (m.size() && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, max_abs(m)))
    throw std::invalid_argument("psd_project: matrix is not symmetric");
  if (m.rows() == 0) return m;
  if (m.rows() == 1) return Mat::Constant(1, 1, std::max(0.0, m(0, 0)));
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const Vec& ev = es.eigenvalues();
  if (ev(0) >= 0) return m;
  const Mat& V = es.eigenvectors();
  int first = 0;
  while (first < ev.size() && ev(first) <= 0) ++first;
  const int k = static_cast<int>(ev.size()) - first;
  Mat Vk = V.rightCols(k);
  return Vk * ev.tail(k).asDiagonal() * Vk.transpose();
}

Mat sym_pinv(const Mat& m, double rel_tol) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const Vec& ev = es.eigenvalues();
  double cut = rel_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Vec inv(ev.size());
  for (int i = 0; i < ev.size(); ++i) inv(i) = std::abs(ev(i)) > cut ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace csdp
