#include "rdl/sparse_coding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdl/kernels.hpp"

namespace rdl {

namespace {

constexpr double kDeadAtomNorm = 1e-12;  // Gram diagonal below its square is skipped

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

struct GramCache {
  Matrix g;                  // DᵀD
  std::vector<double> diag;  // g(j,j)
  std::vector<char> dead;    // atoms with vanishing norm
};

GramCache make_gram_cache(const Matrix& dict, bool parallel = true) {
  GramCache gc;
  gc.g = parallel ? gram_columns(dict) : serial::gram_columns(dict);
  gc.diag.resize(dict.cols());
  gc.dead.resize(dict.cols());
  for (std::size_t j = 0; j < dict.cols(); ++j) {
    gc.diag[j] = gc.g(j, j);
    gc.dead[j] = gc.diag[j] < kDeadAtomNorm * kDeadAtomNorm ? 1 : 0;
  }
  return gc;
}

// One coordinate-descent solve on a preassembled Gram system. `a` carries
// the warm start in and the solution out. `ga` is scratch of length k
// holding G*a, maintained incrementally.
void cd_solve(const GramCache& gc, std::span<const double> dtx, double lambda_eff,
              const LassoSettings& settings, std::span<double> a,
              std::vector<double>& ga, bool* converged, std::size_t* sweeps_used) {
  const std::size_t k = gc.diag.size();

  ga.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    if (gc.dead[j]) a[j] = 0.0;
    const double aj = a[j];
    if (aj == 0.0) continue;
    for (std::size_t i = 0; i < k; ++i) ga[i] += aj * gc.g(i, j);
  }

  bool ok = false;
  std::size_t sweep = 0;
  for (; sweep < settings.max_iters; ++sweep) {
    double max_delta = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (gc.dead[j]) continue;
      const double rho = dtx[j] - ga[j] + gc.diag[j] * a[j];
      const double next = soft_threshold(rho, lambda_eff) / gc.diag[j];
      const double delta = next - a[j];
      if (delta != 0.0) {
        a[j] = next;
        for (std::size_t i = 0; i < k; ++i) ga[i] += delta * gc.g(i, j);
      }
      max_delta = std::max(max_delta, std::abs(delta));
    }
    if (max_delta < settings.tol) {
      ok = true;
      ++sweep;
      break;
    }
  }
  if (converged) *converged = ok;
  if (sweeps_used) *sweeps_used = sweep;
}

void code_column(const Matrix& dict, const GramCache& gc, const Matrix& x,
                 std::size_t col, double lambda, const std::vector<double>& weights,
                 double s_min, const LassoSettings& settings,
                 const CoeffMatrix* warm_start, CoeffMatrix& out,
                 std::vector<double>& dtx, std::vector<double>& ga) {
  auto a = out.col(col);
  if (weights[col] <= s_min) {
    std::fill(a.begin(), a.end(), 0.0);
    return;
  }
  const double lambda_eff = lambda / weights[col];
  if (warm_start) {
    auto w = warm_start->col(col);
    std::copy(w.begin(), w.end(), a.begin());
  } else {
    std::fill(a.begin(), a.end(), 0.0);
  }
  auto xi = x.col(col);
  for (std::size_t j = 0; j < dict.cols(); ++j) dtx[j] = dot(dict.col(j), xi);
  cd_solve(gc, dtx, lambda_eff, settings, a, ga, nullptr, nullptr);
}

void check_code_args(const Matrix& dict, const Matrix& x, double lambda,
                     const std::vector<double>& weights,
                     const CoeffMatrix* warm_start) {
  if (dict.rows() != x.rows())
    throw std::invalid_argument("sparse_code_all: dictionary/data row mismatch");
  if (weights.size() != x.cols())
    throw std::invalid_argument("sparse_code_all: weight count != sample count");
  if (warm_start && (warm_start->rows() != dict.cols() || warm_start->cols() != x.cols()))
    throw std::invalid_argument("sparse_code_all: warm start has wrong shape");
  if (!(lambda >= 0.0)) throw std::invalid_argument("sparse_code_all: lambda must be >= 0");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("sparse_code_all: weights must be >= 0");
}

}  // namespace

LassoResult lasso(const Matrix& dict, std::span<const double> x, double lambda_eff,
                  const LassoSettings& settings, std::span<const double> start) {
  if (x.size() != dict.rows()) throw std::invalid_argument("lasso: sample/dictionary dimension mismatch");
  if (!start.empty() && start.size() != dict.cols())
    throw std::invalid_argument("lasso: warm start has wrong length");
  if (!(lambda_eff >= 0.0)) throw std::invalid_argument("lasso: lambda must be >= 0");

  const GramCache gc = make_gram_cache(dict);
  std::vector<double> dtx(dict.cols());
  for (std::size_t j = 0; j < dict.cols(); ++j) dtx[j] = dot(dict.col(j), x);

  LassoResult res;
  res.coeffs.assign(dict.cols(), 0.0);
  if (!start.empty()) std::copy(start.begin(), start.end(), res.coeffs.begin());
  std::vector<double> ga;
  cd_solve(gc, dtx, lambda_eff, settings, res.coeffs, ga, &res.converged, &res.sweeps);
  return res;
}

CoeffMatrix sparse_code_all(const Matrix& dict, const Matrix& x, double lambda,
                            const std::vector<double>& weights, double s_min,
                            const LassoSettings& settings,
                            const CoeffMatrix* warm_start) {
  check_code_args(dict, x, lambda, weights, warm_start);
  const GramCache gc = make_gram_cache(dict);
  CoeffMatrix out(dict.cols(), x.cols());
#pragma omp parallel
  {
    std::vector<double> dtx(dict.cols());
    std::vector<double> ga;
#pragma omp for schedule(dynamic, 8)
    for (long i = 0; i < static_cast<long>(x.cols()); ++i)
      code_column(dict, gc, x, static_cast<std::size_t>(i), lambda, weights, s_min,
                  settings, warm_start, out, dtx, ga);
  }
  return out;
}

namespace serial {

CoeffMatrix sparse_code_all(const Matrix& dict, const Matrix& x, double lambda,
                            const std::vector<double>& weights, double s_min,
                            const LassoSettings& settings,
                            const CoeffMatrix* warm_start) {
  check_code_args(dict, x, lambda, weights, warm_start);
  const GramCache gc = make_gram_cache(dict, /*parallel=*/false);
  CoeffMatrix out(dict.cols(), x.cols());
  std::vector<double> dtx(dict.cols());
  std::vector<double> ga;
  for (std::size_t i = 0; i < x.cols(); ++i)
    code_column(dict, gc, x, i, lambda, weights, s_min, settings, warm_start, out,
                dtx, ga);
  return out;
}

}  // namespace serial

}  // namespace rdl
