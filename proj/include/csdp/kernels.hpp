#pragma once

#include <vector>

#include "csdp/dense.hpp"

namespace csdp {

// Serial and OpenMP variants of the per-clique kernels. The parallel ones write
// each clique's result into its own slot, so outputs are bitwise identical.
enum class Exec { Serial, Parallel };

void psd_project_batch(const std::vector<Mat>& in, std::vector<Mat>& out, Exec exec);
std::vector<double> min_eigenvalues(const std::vector<Mat>& blocks, Exec exec);

// Number of threads the Parallel variants use; 0 keeps the OpenMP default.
void set_num_threads(int threads);
int max_threads();

}  // namespace csdp
