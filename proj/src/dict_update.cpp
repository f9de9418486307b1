#include "rdl/dict_update.hpp"

#include <cmath>
#include <stdexcept>

#include "rdl/kernels.hpp"

namespace rdl {

namespace {

constexpr double kUnusedAtomTol = 1e-12;

void check_shapes(const Dictionary& dict, const Matrix& x, const CoeffMatrix& coeffs,
                  const std::vector<double>& weights) {
  if (dict.rows() != x.rows())
    throw std::invalid_argument("update_dictionary: dictionary/data row mismatch");
  if (coeffs.rows() != dict.cols() || coeffs.cols() != x.cols())
    throw std::invalid_argument("update_dictionary: coefficient shape mismatch");
  if (weights.size() != x.cols())
    throw std::invalid_argument("update_dictionary: weight count != sample count");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("update_dictionary: weights must be >= 0");
}

// Picks the unreplaced sample with the largest weighted residual; ties and
// the scan both go lowest index first. Returns x.cols() when every residual
// is negligible (no signal to re-seed from).
std::size_t pick_replacement(const Matrix& xs, const Dictionary& dict,
                             const CoeffMatrix& as, const Matrix& x_raw,
                             const std::vector<char>& taken) {
  const std::vector<double> res = residual_sq_norms(xs, dict, as);
  std::size_t best = xs.cols();
  double best_val = kUnusedAtomTol;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (taken[i]) continue;
    if (norm_sq(x_raw.col(i)) < kUnusedAtomTol) continue;  // nothing to normalize
    if (res[i] > best_val) {
      best_val = res[i];
      best = i;
    }
  }
  return best;
}

}  // namespace

Dictionary update_dictionary(const Dictionary& dict, const Matrix& x,
                             const CoeffMatrix& coeffs,
                             const std::vector<double>& weights, std::size_t sweeps) {
  check_shapes(dict, x, coeffs, weights);
  const std::size_t d = dict.rows(), k = dict.cols(), n = x.cols();
  if (k == 0 || n == 0) return dict;

  std::vector<double> sqrt_s(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_s[i] = std::sqrt(weights[i]);
  const Matrix xs = scale_columns(x, sqrt_s);
  const CoeffMatrix as = scale_columns(coeffs, sqrt_s);

  const Matrix at = transpose(as);
  const Matrix b = gram_columns(at);  // ÃÃᵀ, k x k
  const Matrix c = matmul(xs, at);    // X̃Ãᵀ, d x k

  // With no coefficient energy at all the objective is constant in D.
  bool any_used = false;
  for (std::size_t j = 0; j < k; ++j) any_used |= b(j, j) > kUnusedAtomTol;
  if (!any_used) return dict;

  Dictionary out = dict;
  std::vector<char> taken(n, 0);
  std::vector<char> reseeded(k, 0);
  std::vector<double> u(d);

  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t j = 0; j < k; ++j) {
      if (b(j, j) <= kUnusedAtomTol) {
        // B never changes within the call, so reseed each unused atom once
        if (reseeded[j]) continue;
        const std::size_t pick = pick_replacement(xs, out, as, x, taken);
        if (pick < n) {
          taken[pick] = 1;
          reseeded[j] = 1;
          auto src = x.col(pick);
          const double nrm = norm2(src);
          auto dj = out.col(j);
          for (std::size_t r = 0; r < d; ++r) dj[r] = src[r] / nrm;
        }
        continue;
      }
      // u = d_j + (c_j - D b_j) / B_jj
      auto dj = out.col(j);
      for (std::size_t r = 0; r < d; ++r) u[r] = c(r, j);
      for (std::size_t l = 0; l < k; ++l) {
        const double blj = b(l, j);
        if (blj == 0.0) continue;
        auto dl = out.col(l);
        for (std::size_t r = 0; r < d; ++r) u[r] -= blj * dl[r];
      }
      for (std::size_t r = 0; r < d; ++r) u[r] = dj[r] + u[r] / b(j, j);
      const double nrm = norm2(u);
      if (nrm < kUnusedAtomTol) continue;  // degenerate direction, keep atom
      for (std::size_t r = 0; r < d; ++r) dj[r] = u[r] / nrm;
    }
  }
  return out;
}

double weighted_quadratic_objective(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const std::vector<double>& weights) {
  const std::vector<double> res = residual_sq_norms(x, dict, coeffs);
  double total = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) total += weights[i] * res[i];
  return 0.5 * total;
}

}  // namespace rdl
