#include "rdl/undercomplete.hpp"

#include <algorithm>
#include <stdexcept>

namespace rdl {

std::size_t resolve_batch_atoms(std::size_t batch_atoms, std::size_t d) {
  if (batch_atoms != 0) return batch_atoms;
  const std::size_t half = d / 2;
  return std::max<std::size_t>(1, std::min(half, d - 1));
}

UndercompleteInit undercomplete_init(const DataMatrix& x, std::size_t k,
                                     const FitSettings& settings) {
  const std::size_t d = x.rows(), n = x.cols();
  if (k <= d)
    throw std::invalid_argument("undercomplete_init: requires k > d (use random init otherwise)");
  const std::size_t b = resolve_batch_atoms(settings.batch_atoms, d);
  if (b >= d) throw std::invalid_argument("undercomplete_init: batch_atoms must be < d");
  if (b < 1) throw std::invalid_argument("undercomplete_init: batch_atoms must be >= 1");

  const std::size_t n_batches = (k + b - 1) / b;

  UndercompleteInit out;
  out.dictionary = Dictionary(d, k);
  out.weights.assign(n, 0.0);
  out.batch_weights.reserve(n_batches);

  for (std::size_t batch = 0; batch < n_batches; ++batch) {
    const std::size_t first = batch * b;
    const std::size_t count = batch + 1 == n_batches ? k - first : b;

    FitSettings sub = settings;
    sub.k = count;
    sub.outer_iters = 1;
    sub.init = InitStrategy::random;
    sub.seed = derive_seed(settings.seed, batch);

    const FitResult res = fit(x, sub);
    for (std::size_t j = 0; j < count; ++j) {
      auto dst = out.dictionary.col(first + j);
      auto src = res.dictionary.col(j);
      std::copy(src.begin(), src.end(), dst.begin());
    }
    for (std::size_t i = 0; i < n; ++i) out.weights[i] += res.weights[i];
    out.batch_weights.push_back(res.weights);
  }

  for (double& w : out.weights) w /= static_cast<double>(n_batches);
  return out;
}

}  // namespace rdl
