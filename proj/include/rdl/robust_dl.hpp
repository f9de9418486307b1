#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdl/matrix.hpp"
#include "rdl/penalties.hpp"
#include "rdl/rng.hpp"
#include "rdl/sparse_coding.hpp"

namespace rdl {

enum class InitStrategy { random, undercomplete };
enum class CoeffInit { zero, random };

struct FitSettings {
  std::size_t k = 8;        // atom count
  double lambda = 0.1;      // global l1 strength
  ConcavePenalty penalty = ConcavePenalty::identity();
  std::size_t outer_iters = 5;  // number of weight refreshes (M)
  std::size_t inner_max = 30;   // max dict/code alternations per outer pass
  double inner_tol = 1e-5;      // relative surrogate-objective change to stop
  double r_floor = 1e-8;        // residual floor in the weight formula
  double w_max = 1e8;           // weight cap
  double s_min = 1e-12;         // below this a sample is fully excluded
  std::uint64_t seed = 0;
  InitStrategy init = InitStrategy::random;
  std::size_t batch_atoms = 0;  // undercomplete batch size b; 0 = floor(d/2)
  CoeffInit coeff_init = CoeffInit::zero;
  std::size_t dict_sweeps = 1;  // BCD sweeps per dictionary update
  bool warm_start = true;       // reuse previous coefficients across alternations
  LassoSettings lasso;
};

struct OuterRecord {
  double robust_objective = 0.0;     // concave-loss objective at end of the pass
  double surrogate_objective = 0.0;  // weighted quadratic form, weights of the pass
  std::size_t inner_iterations = 0;
  bool inner_converged = false;
};

struct FitResult {
  Dictionary dictionary;        // d x k, unit-norm atoms
  CoeffMatrix coeffs;           // k x n from the last coding pass
  std::vector<double> weights;  // final per-sample weights
  std::vector<OuterRecord> history;  // one record per outer iteration
  std::vector<std::string> warnings;
};

/// Majorization-minimization driver. Initializes the dictionary (randomly,
/// or via undercomplete batches when k > d and requested), then repeats
/// outer_iters times: alternate dictionary update and weighted sparse coding
/// until the surrogate objective stalls, then refresh the per-sample weights
/// as g'(r_i) / (2 r_i) from the current residual norms. The robust
/// objective recorded in history is non-increasing across outer iterations.
FitResult fit(const DataMatrix& x, const FitSettings& settings);

/// 0.5 * Σ_i g(‖x_i − D a_i‖₂) + lambda * Σ_i ‖a_i‖₁. Verifies the unit-norm
/// constraint (1e-8) and throws std::runtime_error on violation.
double robust_objective(const Matrix& x, const Dictionary& dict,
                        const CoeffMatrix& coeffs, double lambda,
                        const ConcavePenalty& penalty);

/// 0.5 * Σ_i s_i ‖x_i − D a_i‖₂² + lambda * Σ_i ‖a_i‖₁ — the weighted
/// quadratic surrogate the inner loop descends on.
double surrogate_objective(const Matrix& x, const Dictionary& dict,
                           const CoeffMatrix& coeffs,
                           const std::vector<double>& weights, double lambda);

/// Per-sample weight refresh from current residual norms.
std::vector<double> compute_weights(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const ConcavePenalty& penalty, double r_floor,
                                    double w_max);

/// Outlier scores 1 / max(s_i, s_min); larger means more outlying.
std::vector<double> outlier_scores(const std::vector<double>& weights,
                                   double s_min = 1e-12);

/// d x k matrix of atoms drawn from a spherical Gaussian and normalized.
Dictionary random_unit_atoms(std::size_t d, std::size_t k, Rng& rng);

namespace serial {
std::vector<double> compute_weights(const Matrix& x, const Dictionary& dict,
                                    const CoeffMatrix& coeffs,
                                    const ConcavePenalty& penalty, double r_floor,
                                    double w_max);
}  // namespace serial

}  // namespace rdl
