// rdl - robust dictionary learning experiments
//
// Subcommands: gen (synthetic datasets), fit (learn a model), eval (outlier
// metrics), experiment (preset sweeps). Exit codes: 0 success, 2 bad usage
// or validation, 1 runtime failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rdl/evaluation.hpp"
#include "rdl/io.hpp"
#include "rdl/kernels.hpp"
#include "rdl/presets.hpp"
#include "rdl/robust_dl.hpp"
#include "rdl/synth_data.hpp"
#include "rdl/undercomplete.hpp"

namespace fs = std::filesystem;

namespace {

struct GenGaussArgs {
  std::size_t per_cluster = 250;
  std::size_t outliers = 50;
  std::uint64_t seed = 0;
  double spread = 1.0;
  double radius = 10.0;
  std::string out;
};

struct GenDictArgs {
  std::size_t d = 32;
  std::size_t atoms = 64;
  std::size_t n = 1000;
  std::size_t nnz = 5;
  double outlier_ratio = 0.10;
  double noise = 0.05;
  double gain = 3.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct FitArgs {
  std::string data;
  std::string penalty = "log:eps=1";
  std::string out;
  rdl::FitSettings settings;
  std::string init = "random";
  std::string coeff_init = "zero";
};

struct EvalArgs {
  std::string model;
  std::string labels;
  std::string data;
  std::string score = "weights";
  std::size_t m = 0;  // 0: number of labeled outliers
  std::string out = "-";
};

struct ExperimentArgs {
  std::string preset;
  std::size_t seeds = 5;
  std::uint64_t master_seed = 0;
  std::vector<double> subset;
  std::string out;
};

int run_gen_gauss(const GenGaussArgs& a) {
  const auto ds = rdl::gen_two_gaussians(a.per_cluster, a.outliers, a.seed, a.spread,
                                         a.radius);
  rdl::save_dataset(a.out, ds,
                    {{"generator", "two-gaussians"},
                     {"per_cluster", a.per_cluster},
                     {"outliers", a.outliers},
                     {"spread", a.spread},
                     {"outlier_radius", a.radius},
                     {"seed", a.seed}});
  std::cout << "wrote " << ds.x.cols() << " samples (" << a.outliers << " outliers) to "
            << a.out << "\n";
  return 0;
}

int run_gen_dict(const GenDictArgs& a) {
  const auto ds = rdl::gen_dictionary_data(a.d, a.atoms, a.n, a.nnz, a.outlier_ratio,
                                           a.noise, a.seed, a.gain);
  std::size_t n_out = 0;
  for (auto l : ds.is_outlier) n_out += l;
  rdl::save_dataset(a.out, ds,
                    {{"generator", "dict"},
                     {"d", a.d},
                     {"atoms", a.atoms},
                     {"n", a.n},
                     {"nnz", a.nnz},
                     {"outlier_ratio", a.outlier_ratio},
                     {"noise_sigma", a.noise},
                     {"outlier_gain", a.gain},
                     {"seed", a.seed}});
  std::cout << "wrote " << ds.x.cols() << " samples (" << n_out << " outliers) to "
            << a.out << "\n";
  return 0;
}

int run_fit(FitArgs& a) {
  a.settings.penalty = rdl::parse_penalty(a.penalty);
  a.settings.init =
      a.init == "undercomplete" ? rdl::InitStrategy::undercomplete : rdl::InitStrategy::random;
  a.settings.coeff_init =
      a.coeff_init == "random" ? rdl::CoeffInit::random : rdl::CoeffInit::zero;

  const auto x = rdl::load_data_csv(a.data);
  if (!rdl::all_finite(x))
    throw std::domain_error("data integrity: " + a.data + " contains non-finite values");

  const auto start = std::chrono::steady_clock::now();
  const auto res = rdl::fit(x, a.settings);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

  rdl::ModelArtifact m;
  m.dictionary = res.dictionary;
  m.weights = res.weights;
  m.settings = a.settings;
  m.history = res.history;
  m.fit_seconds = seconds;
  rdl::save_model(a.out, m);

  std::cout << "model written to " << a.out << "\n"
            << "outer iterations: " << res.history.size() << "\n"
            << "final robust objective: "
            << rdl::format_double(res.history.back().robust_objective) << "\n";
  return 0;
}

int run_eval(const EvalArgs& a) {
  const auto model = rdl::load_model(a.model);
  const auto labels = rdl::load_labels_csv(a.labels);
  if (labels.size() != model.weights.size())
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match the model's sample count " +
                                std::to_string(model.weights.size()));

  std::vector<double> scores;
  if (a.score == "weights") {
    scores = rdl::outlier_scores(model.weights, model.settings.s_min);
  } else if (a.score == "residual") {
    if (a.data.empty())
      throw std::invalid_argument("--score residual needs --data to recompute residuals");
    const auto x = rdl::load_data_csv(a.data);
    if (x.rows() != model.dictionary.rows() || x.cols() != model.weights.size())
      throw std::invalid_argument("dataset shape does not match the model");
    const auto coeffs = rdl::sparse_code_all(
        model.dictionary, x, model.settings.lambda,
        std::vector<double>(x.cols(), 1.0), model.settings.s_min, model.settings.lasso);
    const auto res_sq = rdl::residual_sq_norms(x, model.dictionary, coeffs);
    scores.resize(res_sq.size());
    for (std::size_t i = 0; i < res_sq.size(); ++i) scores[i] = std::sqrt(res_sq[i]);
  } else {
    throw std::invalid_argument("--score must be 'weights' or 'residual'");
  }

  std::size_t m = a.m;
  if (m == 0)
    for (auto l : labels) m += l ? 1 : 0;

  const double auc = rdl::auroc(scores, labels);
  const std::size_t hits = rdl::top_m_detection(scores, labels, m);
  const double final_obj =
      model.history.empty() ? std::nan("") : model.history.back().robust_objective;

  const std::string header = "seed,penalty,k,lambda,init,score,auroc,top_m,m,final_objective,fit_seconds";
  std::ostringstream row;
  row << model.settings.seed << "," << model.settings.penalty.to_string() << ","
      << model.settings.k << "," << rdl::format_double(model.settings.lambda) << ","
      << (model.settings.init == rdl::InitStrategy::undercomplete ? "undercomplete" : "random")
      << "," << a.score << "," << rdl::format_double(auc) << "," << hits << "," << m << ","
      << rdl::format_double(final_obj) << "," << rdl::format_double(model.fit_seconds);

  if (a.out == "-") {
    std::cout << header << "\n" << row.str() << "\n";
  } else {
    const bool fresh = !fs::exists(a.out);
    std::ofstream f(a.out, std::ios::app);
    if (!f) throw std::runtime_error("cannot open " + a.out);
    if (fresh) f << header << "\n";
    f << row.str() << "\n";
    std::cout << "appended metrics row to " << a.out << "\n";
  }
  return 0;
}

int run_experiment(const ExperimentArgs& a) {
  rdl::SweepConfig cfg;
  try {
    cfg = rdl::sweep_preset(a.preset);
  } catch (const std::invalid_argument&) {
    std::cerr << "unknown preset '" << a.preset << "'; available:";
    for (const auto& name : rdl::sweep_preset_names()) std::cerr << " " << name;
    std::cerr << "\n";
    return 2;
  }
  if (!a.subset.empty()) {
    for (double v : a.subset)
      if (std::find(cfg.values.begin(), cfg.values.end(), v) == cfg.values.end())
        throw std::invalid_argument("subset value " + rdl::format_double(v) +
                                    " is not in the preset grid");
  }
  if (a.seeds < 1) throw std::invalid_argument("--seeds must be >= 1");

  const std::string out = a.out.empty() ? "experiment_" + a.preset + ".csv" : a.out;
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << "sweep_var,value,init,auroc_mean,auroc_std,seeds\n";

  for (std::size_t vi = 0; vi < cfg.values.size(); ++vi) {
    if (!a.subset.empty() &&
        std::find(a.subset.begin(), a.subset.end(), cfg.values[vi]) == a.subset.end())
      continue;
    for (const auto init : {rdl::InitStrategy::random, rdl::InitStrategy::undercomplete}) {
      const auto aurocs = rdl::sweep_cell_aurocs(cfg, vi, init, a.seeds, a.master_seed);
      double mean = 0.0;
      for (double v : aurocs) mean += v;
      mean /= static_cast<double>(aurocs.size());
      double var = 0.0;
      for (double v : aurocs) var += (v - mean) * (v - mean);
      const double stddev =
          aurocs.size() > 1 ? std::sqrt(var / static_cast<double>(aurocs.size() - 1)) : 0.0;

      f << cfg.sweep_var << "," << rdl::format_double(cfg.values[vi]) << ","
        << (init == rdl::InitStrategy::undercomplete ? "undercomplete" : "default") << ","
        << rdl::format_double(mean) << "," << rdl::format_double(stddev) << ","
        << aurocs.size() << "\n";
      std::cout << a.preset << " " << cfg.sweep_var << "=" << cfg.values[vi] << " "
                << (init == rdl::InitStrategy::undercomplete ? "undercomplete" : "default")
                << " auroc " << mean << "\n";
    }
  }
  std::cout << "results written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("RDL_THREADS")) {
#ifdef _OPENMP
    const int t = std::atoi(threads);
    if (t > 0) omp_set_num_threads(t);
#else
    (void)threads;
#endif
  }

  CLI::App app{"robust dictionary learning with concave losses"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->require_subcommand(1);
  GenGaussArgs gg;
  auto* gauss = gen->add_subcommand("two-gaussians", "2D clusters with ring outliers");
  gauss->add_option("--per-cluster", gg.per_cluster, "points per cluster");
  gauss->add_option("--outliers", gg.outliers, "number of outliers");
  gauss->add_option("--seed", gg.seed, "rng seed");
  gauss->add_option("--spread", gg.spread, "cluster standard deviation")
      ->check(CLI::NonNegativeNumber);
  gauss->add_option("--radius", gg.radius, "outlier ring radius")
      ->check(CLI::NonNegativeNumber);
  gauss->add_option("-o,--out", gg.out, "output directory")->required();

  GenDictArgs gd;
  auto* dict = gen->add_subcommand("dict", "dictionary-generated data with outliers");
  dict->add_option("--d", gd.d, "ambient dimension")->check(CLI::PositiveNumber);
  dict->add_option("--atoms", gd.atoms, "ground-truth dictionary size")
      ->check(CLI::PositiveNumber);
  dict->add_option("--n", gd.n, "number of samples")->check(CLI::PositiveNumber);
  dict->add_option("--nnz", gd.nnz, "nonzeros per coefficient vector")
      ->check(CLI::PositiveNumber);
  dict->add_option("--outlier-ratio", gd.outlier_ratio, "fraction of outliers in [0,1)");
  dict->add_option("--noise", gd.noise, "additive noise sigma")->check(CLI::NonNegativeNumber);
  dict->add_option("--gain", gd.gain, "outlier norm gain")->check(CLI::NonNegativeNumber);
  dict->add_option("--seed", gd.seed, "rng seed");
  dict->add_option("-o,--out", gd.out, "output directory")->required();

  // fit
  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "fit a robust dictionary to a dataset");
  fit_cmd->add_option("--data", fa.data, "dataset csv")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--penalty", fa.penalty, "concave penalty spec, e.g. log:eps=1");
  fit_cmd->add_option("--k", fa.settings.k, "dictionary size")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--lambda", fa.settings.lambda, "l1 regularization strength")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--M,--outer-iters", fa.settings.outer_iters, "outer iterations")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--inner-max", fa.settings.inner_max, "max inner alternations")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--inner-tol", fa.settings.inner_tol, "inner convergence tolerance")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--init", fa.init, "init strategy: random | undercomplete")
      ->check(CLI::IsMember({"random", "undercomplete"}));
  fit_cmd->add_option("--batch-atoms", fa.settings.batch_atoms,
                      "atoms per undercomplete batch (0 = d/2)");
  fit_cmd->add_option("--coeff-init", fa.coeff_init, "initial coefficients: zero | random")
      ->check(CLI::IsMember({"zero", "random"}));
  fit_cmd->add_option("--dict-sweeps", fa.settings.dict_sweeps, "BCD sweeps per update")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_flag("--cold-start", [&fa](std::int64_t) { fa.settings.warm_start = false; },
                    "disable warm-started coding across alternations");
  fit_cmd->add_option("--lasso-max-iters", fa.settings.lasso.max_iters, "CD sweep budget")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--lasso-tol", fa.settings.lasso.tol, "CD stop tolerance")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--r-floor", fa.settings.r_floor, "residual floor in weights")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--w-max", fa.settings.w_max, "weight cap")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--s-min", fa.settings.s_min, "sample exclusion threshold")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--seed", fa.settings.seed, "rng seed");
  fit_cmd->add_option("-o,--out", fa.out, "model output directory")->required();

  // eval
  EvalArgs ea;
  auto* eval_cmd = app.add_subcommand("eval", "outlier-detection metrics for a model");
  eval_cmd->add_option("--model", ea.model, "model directory")->required();
  eval_cmd->add_option("--labels", ea.labels, "labels csv")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--data", ea.data, "dataset csv (needed for --score residual)");
  eval_cmd->add_option("--score", ea.score, "score source: weights | residual")
      ->check(CLI::IsMember({"weights", "residual"}));
  eval_cmd->add_option("--m", ea.m, "top-m cutoff (default: number of labeled outliers)");
  eval_cmd->add_option("-o,--out", ea.out, "metrics csv to append to ('-' = stdout)");

  // experiment
  ExperimentArgs xa;
  auto* exp_cmd = app.add_subcommand("experiment", "run a preset sweep");
  exp_cmd->add_option("preset", xa.preset, "preset name (fig2a, fig2b, fig2c)")->required();
  exp_cmd->add_option("--seeds", xa.seeds, "runs per grid point");
  exp_cmd->add_option("--master-seed", xa.master_seed, "seed all runs derive from");
  exp_cmd->add_option("--subset", xa.subset, "restrict the sweep to these grid values")
      ->delimiter(',');
  exp_cmd->add_option("-o,--out", xa.out, "results csv path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gauss->parsed()) return run_gen_gauss(gg);
    if (dict->parsed()) return run_gen_dict(gd);
    if (fit_cmd->parsed()) return run_fit(fa);
    if (eval_cmd->parsed()) return run_eval(ea);
    if (exp_cmd->parsed()) return run_experiment(xa);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
