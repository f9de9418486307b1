#include "rdl/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "rdl/evaluation.hpp"
#include "rdl/synth_data.hpp"

namespace rdl {

std::vector<std::string> sweep_preset_names() { return {"fig2a", "fig2b", "fig2c"}; }

SweepConfig sweep_preset(std::string_view name) {
  SweepConfig cfg;
  if (name == "fig2a") {
    cfg.sweep_var = "k";
    cfg.values = {8, 16, 32, 40, 48, 64, 96, 128};
    return cfg;
  }
  if (name == "fig2b") {
    cfg.sweep_var = "n";
    cfg.values = {250, 500, 1000, 2000, 4000};
    return cfg;
  }
  if (name == "fig2c") {
    cfg.sweep_var = "outlier_pct";
    cfg.values = {5, 10, 20, 30, 40};
    return cfg;
  }
  throw std::invalid_argument("unknown experiment preset '" + std::string(name) + "'");
}

FitSettings sweep_fit_settings(std::size_t k, InitStrategy init, std::uint64_t seed) {
  FitSettings s;
  s.k = k;
  s.lambda = 0.15;
  s.penalty = ConcavePenalty::log(1.0);
  s.outer_iters = 5;
  s.inner_max = 15;
  s.inner_tol = 1e-4;
  s.init = init;
  s.batch_atoms = 16;
  s.seed = seed;
  return s;
}

FitSettings two_gaussian_fit_settings(const ConcavePenalty& penalty,
                                      std::uint64_t seed) {
  FitSettings s;
  s.k = 2;
  s.lambda = 0.5;
  s.penalty = penalty;
  s.outer_iters = 10;
  s.inner_max = 30;
  s.inner_tol = 1e-5;
  s.seed = seed;
  return s;
}

std::vector<double> sweep_cell_aurocs(const SweepConfig& cfg, std::size_t value_index,
                                      InitStrategy init, std::size_t n_seeds,
                                      std::uint64_t master_seed,
                                      std::vector<Dictionary>* dictionaries) {
  if (value_index >= cfg.values.size())
    throw std::invalid_argument("sweep_cell_aurocs: value index out of range");
  const double value = cfg.values[value_index];

  std::size_t k = cfg.k, n = cfg.n;
  double ratio = cfg.outlier_ratio;
  if (cfg.sweep_var == "k")
    k = static_cast<std::size_t>(value);
  else if (cfg.sweep_var == "n")
    n = static_cast<std::size_t>(value);
  else if (cfg.sweep_var == "outlier_pct")
    ratio = value / 100.0;
  else
    throw std::invalid_argument("sweep_cell_aurocs: unknown sweep_var '" + cfg.sweep_var + "'");

  std::vector<double> aurocs;
  aurocs.reserve(n_seeds);
  for (std::size_t r = 0; r < n_seeds; ++r) {
    const std::uint64_t cell = 1000003ULL * value_index + 2ULL * r;
    const auto ds = gen_dictionary_data(cfg.d, cfg.k_true, n, cfg.nnz, ratio,
                                        cfg.noise_sigma, derive_seed(master_seed, cell),
                                        cfg.outlier_gain);
    auto settings = sweep_fit_settings(k, init, derive_seed(master_seed, cell + 1));
    const FitResult res = fit(ds.x, settings);
    const auto scores = outlier_scores(res.weights, settings.s_min);
    aurocs.push_back(auroc(scores, ds.is_outlier));
    if (dictionaries) dictionaries->push_back(res.dictionary);
  }
  return aurocs;
}

}  // namespace rdl
