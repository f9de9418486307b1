#include "rdl/robust_dl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdl/dict_update.hpp"
#include "rdl/kernels.hpp"
#include "rdl/undercomplete.hpp"

namespace rdl {

namespace {

constexpr double kUnitNormSlack = 1e-8;

std::vector<double> weights_from_residuals(const std::vector<double>& res_sq,
                                           const ConcavePenalty& penalty,
                                           double r_floor, double w_max) {
  std::vector<double> out(res_sq.size());
  for (std::size_t i = 0; i < res_sq.size(); ++i)
    out[i] = penalty.weight(std::sqrt(res_sq[i]), r_floor, w_max);
  return out;
}

void check_fit_args(const DataMatrix& x, const FitSettings& s) {
  if (x.empty()) throw std::domain_error("fit: empty data matrix");
  if (!all_finite(x)) throw std::domain_error("fit: data contains non-finite entries");
  if (s.k < 1) throw std::domain_error("fit: k must be >= 1");
  if (!(s.lambda >= 0.0)) throw std::invalid_argument("fit: lambda must be >= 0");
  if (s.outer_iters < 1) throw std::invalid_argument("fit: outer_iters must be >= 1");
  if (s.inner_max < 1) throw std::invalid_argument("fit: inner_max must be >= 1");
  if (!(s.inner_tol > 0.0)) throw std::invalid_argument("fit: inner_tol must be > 0");
}

}  // namespace

Dictionary random_unit_atoms(std::size_t d, std::size_t k, Rng& rng) {
  Dictionary dict(d, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto col = dict.col(j);
    double nrm = 0.0;
    do {
      rng.fill_gaussian(col);
      nrm = norm2(col);
    } while (nrm < 1e-12);
    for (double& v : col) v /= nrm;
  }
  return dict;
}

double robust_objective(const Matrix& x, const Dictionary& dict,
                        const CoeffMatrix& coeffs, double lambda,
                        const ConcavePenalty& penalty) {
  if (max_unit_norm_deviation(dict) > kUnitNormSlack)
    throw std::runtime_error("robust_objective: dictionary violates the unit-norm constraint");
  const std::vector<double> res_sq = residual_sq_norms(x, dict, coeffs);
  double loss = 0.0;
  for (double v : res_sq) loss += penalty.loss(v);
  double l1 = 0.0;
  for (double v : column_l1_norms(coeffs)) l1 += v;
  return 0.5 * loss + lambda * l1;
}

double surrogate_objective(const Matrix& x, const Dictionary& dict,
                           const CoeffMatrix& coeffs,
                           const std::vector<double>& weights, double lambda) {
  if (weights.size() != x.cols())
    throw std::invalid_argument("surrogate_objective: weight count != sample count");
  const std::vector<double> res_sq = residual_sq_norms(x, dict, coeffs);
  double quad = 0.0;
  for (std::size_t i = 0; i < res_sq.size(); ++i) quad += weights[i] * res_sq[i];
  double l1 = 0.0;
  for (double v : column_l1_norms(coeffs)) l1 += v;
  return 0.5 * quad + lambda * l1;
}

std::vector<double> compute_weights(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const ConcavePenalty& penalty, double r_floor,
                                    double w_max) {
  return weights_from_residuals(residual_sq_norms(x, dict, coeffs), penalty, r_floor,
                                w_max);
}

namespace serial {
std::vector<double> compute_weights(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const ConcavePenalty& penalty, double r_floor,
                                    double w_max) {
  return weights_from_residuals(serial::residual_sq_norms(x, dict, coeffs), penalty,
                                r_floor, w_max);
}
}  // namespace serial

std::vector<double> outlier_scores(const std::vector<double>& weights, double s_min) {
  std::vector<double> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    out[i] = 1.0 / std::max(weights[i], s_min);
  return out;
}

FitResult fit(const DataMatrix& x, const FitSettings& settings) {
  check_fit_args(x, settings);
  const std::size_t d = x.rows(), n = x.cols(), k = settings.k;

  FitResult result;
  if (n < k)
    result.warnings.push_back("fewer samples than atoms (n < k); the coding is underdetermined");

  Rng rng(settings.seed);
  Dictionary dict;
  std::vector<double> s(n, 1.0);
  if (settings.init == InitStrategy::undercomplete && k > d) {
    auto init = undercomplete_init(x, k, settings);
    dict = std::move(init.dictionary);
    s = std::move(init.weights);
  } else {
    dict = random_unit_atoms(d, k, rng);
  }
  CoeffMatrix coeffs(k, n);
  if (settings.coeff_init == CoeffInit::random) {
    for (std::size_t j = 0; j < n; ++j) rng.fill_gaussian(coeffs.col(j));
  }

  result.history.reserve(settings.outer_iters);
  for (std::size_t outer = 0; outer < settings.outer_iters; ++outer) {
    double prev = surrogate_objective(x, dict, coeffs, s, settings.lambda);
    OuterRecord rec;
    for (std::size_t inner = 0; inner < settings.inner_max; ++inner) {
      dict = update_dictionary(dict, x, coeffs, s, settings.dict_sweeps);
      coeffs = sparse_code_all(dict, x, settings.lambda, s, settings.s_min,
                               settings.lasso,
                               settings.warm_start ? &coeffs : nullptr);
      const double obj = surrogate_objective(x, dict, coeffs, s, settings.lambda);
      rec.inner_iterations = inner + 1;
      rec.surrogate_objective = obj;
      if (std::abs(prev - obj) <= settings.inner_tol * std::max(1.0, std::abs(prev))) {
        rec.inner_converged = true;
        break;
      }
      prev = obj;
    }
    rec.robust_objective =
        robust_objective(x, dict, coeffs, settings.lambda, settings.penalty);
    result.history.push_back(rec);

    // weight refresh; the weights recorded above are the ones the pass used
    s = compute_weights(x, dict, coeffs, settings.penalty, settings.r_floor,
                        settings.w_max);
  }

  result.dictionary = std::move(dict);
  result.coeffs = std::move(coeffs);
  result.weights = std::move(s);
  return result;
}

}  // namespace rdl
