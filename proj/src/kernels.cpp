#include "csdp/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csdp {

void psd_project_batch(const std::vector<Mat>& in, std::vector<Mat>& out, Exec exec) {
  out.resize(in.size());
  const long t = static_cast<long>(in.size());
  if (exec == Exec::Serial) {
    for (long k = 0; k < t; ++k) out[k] = psd_project(in[k]);
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < t; ++k) out[k] = psd_project(in[k]);
}

std::vector<double> min_eigenvalues(const std::vector<Mat>& blocks, Exec exec) {
  std::vector<double> out(blocks.size());
  const long t = static_cast<long>(blocks.size());
  if (exec == Exec::Serial) {
    for (long k = 0; k < t; ++k) out[k] = min_eigenvalue(blocks[k]);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < t; ++k) out[k] = min_eigenvalue(blocks[k]);
  return out;
}

void set_num_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace csdp
