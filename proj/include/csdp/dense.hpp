#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace csdp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Scale-aware PSD tolerance: 1e-8 * max(1, max|entry|).
double psd_tolerance(const Mat& m);
double max_abs(const Mat& m);
double min_eigenvalue(const Mat& m);
bool is_psd(const Mat& m);
int numeric_rank(const Mat& m, double threshold = 1e-8);
// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
Mat psd_project(const Mat& m);
// Moore–Penrose inverse of a symmetric matrix via its eigendecomposition.
Mat sym_pinv(const Mat& m, double rel_tol = 1e-12);

// Shortest decimal that round-trips; never prints "-0".
std::string format_double(double v);

}  // namespace csdp
