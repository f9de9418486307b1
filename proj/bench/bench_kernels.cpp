// Timing harness for the OpenMP kernels against their serial twins. Run as
//   rdl_bench [n_samples] [atoms] [dim]
// Prints per-kernel wall times, the speedup, and a bitwise-equality check
// (the parallel results must match the serial ones exactly).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rdl/kernels.hpp"
#include "rdl/robust_dl.hpp"
#include "rdl/rng.hpp"
#include "rdl/sparse_coding.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(F&& fn, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-22s serial %8.4fs   parallel %8.4fs   speedup %5.2fx   %s\n", name,
              serial_s, parallel_s, serial_s / parallel_s,
              equal ? "bitwise-equal" : "MISMATCH");
}

rdl::Matrix random_matrix(std::size_t rows, std::size_t cols, rdl::Rng& rng) {
  rdl::Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) rng.fill_gaussian(m.col(j));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t k = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 96;
  const std::size_t d = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 32;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("n=%zu  k=%zu  d=%zu\n\n", n, k, d);

  rdl::Rng rng(7);
  const rdl::Matrix data = random_matrix(d, n, rng);
  rdl::Matrix dict = random_matrix(d, k, rng);
  for (std::size_t j = 0; j < k; ++j) {
    auto c = dict.col(j);
    const double nrm = rdl::norm2(c);
    for (double& v : c) v /= nrm;
  }
  const std::vector<double> weights(n, 1.0);
  const double lambda = 0.15;
  bool all_equal = true;

  {
    rdl::Matrix ser, par;
    const double ts = time_best_of([&] { ser = rdl::serial::gram_columns(data); });
    const double tp = time_best_of([&] { par = rdl::gram_columns(data); });
    const bool eq = ser == par;
    all_equal &= eq;
    report("gram_columns", ts, tp, eq);
  }

  rdl::Matrix coeffs;
  {
    rdl::Matrix ser, par;
    const double ts = time_best_of(
        [&] { ser = rdl::serial::sparse_code_all(dict, data, lambda, weights, 1e-12, {}); },
        1);
    const double tp = time_best_of(
        [&] { par = rdl::sparse_code_all(dict, data, lambda, weights, 1e-12, {}); }, 1);
    const bool eq = ser == par;
    all_equal &= eq;
    coeffs = par;
    report("sparse_code_all", ts, tp, eq);
  }

  {
    std::vector<double> ser, par;
    const double ts =
        time_best_of([&] { ser = rdl::serial::residual_sq_norms(data, dict, coeffs); });
    const double tp = time_best_of([&] { par = rdl::residual_sq_norms(data, dict, coeffs); });
    const bool eq = ser == par;
    all_equal &= eq;
    report("residual_sq_norms", ts, tp, eq);
  }

  {
    const auto penalty = rdl::ConcavePenalty::log(1.0);
    std::vector<double> ser, par;
    const double ts = time_best_of(
        [&] { ser = rdl::serial::compute_weights(data, dict, coeffs, penalty, 1e-8, 1e8); });
    const double tp = time_best_of(
        [&] { par = rdl::compute_weights(data, dict, coeffs, penalty, 1e-8, 1e8); });
    const bool eq = ser == par;
    all_equal &= eq;
    report("compute_weights", ts, tp, eq);
  }

  if (!all_equal) {
    std::printf("\nparallel kernels diverged from the serial reference\n");
    return 1;
  }
  return 0;
}
