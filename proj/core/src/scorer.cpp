#include "pot/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "pot/errors.hpp"
#include "pot/random.hpp"

namespace pot {

double LambdaPolicy::resolve(const CostMatrix& cost) const {
  if (mode == Mode::Relative) return relative_lambda(cost, value);
  if (!(value > 0.0) || !std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  return value;
}

std::vector<double> test_mean(const FeatureMatrix& test) {
  std::vector<double> mean(test.cols(), 0.0);
  for (std::size_t r = 0; r < test.rows(); ++r) {
    auto z = test.row(r);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += z[k];
  }
  const double m = static_cast<double>(test.rows());
  for (double& v : mean) v /= m;
  return mean;
}

VirtualOutlierSet make_virtual_outliers(const PrototypeSet& prototypes, std::span<const double> mean, double omega) {
  if (!(omega > 1.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::OmegaOutOfRange, "omega must be greater than 1, got " + std::to_string(omega));
  }
  if (mean.size() != prototypes.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "test mean has dimension " + std::to_string(mean.size()) +
                                                  ", prototypes " + std::to_string(prototypes.dim()));
  }
  DenseMatrix out(prototypes.num_classes(), prototypes.dim());
  bool degenerate = false;
  for (std::size_t i = 0; i < prototypes.num_classes(); ++i) {
    auto eta = prototypes.prototype(i);
    auto star = out.row(i);
    bool same = true;
    for (std::size_t k = 0; k < eta.size(); ++k) {
      star[k] = eta[k] + omega * (mean[k] - eta[k]);
      same = same && mean[k] == eta[k];
    }
    degenerate = degenerate || same;
  }
  return VirtualOutlierSet{FeatureMatrix(std::move(out)), prototypes.masses(), omega,
                           std::vector<double>(mean.begin(), mean.end()), degenerate};
}

ScoredBatch score_batch(const PrototypeSet& prototypes, const FeatureMatrix& test, const ScoreConfig& config,
                        std::size_t batch_index) {
  if (!(config.omega > 1.0) || !std::isfinite(config.omega)) {
    throw Error(ErrorKind::OmegaOutOfRange, "omega must be greater than 1, got " + std::to_string(config.omega));
  }
  const std::size_t m = test.rows();
  ScoredBatch out;
  out.batch_index = batch_index;
  out.omega = config.omega;
  out.batch_size = m;
  if (m == 1) out.warnings.emplace_back("batch of one sample: all target mass sits on a single column");

  const CostMatrix cost = euclidean_cost(prototypes, test);
  out.lambda = config.lambda.resolve(cost);
  const SolverConfig solver = config.solver(out.lambda);
  const Marginals marginals = Marginals::uniform_targets(prototypes.masses(), m);

  const TransportSolution to_id = sinkhorn(cost, marginals, solver);

  const auto mean = test_mean(test);
  const VirtualOutlierSet virt = make_virtual_outliers(prototypes, mean, config.omega);
  if (virt.degenerate) out.warnings.emplace_back("a prototype equals the test mean; its virtual outlier is not displaced");
  const TransportSolution to_out = sinkhorn(euclidean_cost(virt.outliers, test), marginals, solver);

  out.t_id = to_id.per_sample_cost;
  out.t_out = to_out.per_sample_cost;
  out.scores.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.scores[j] = out.t_id[j] - out.t_out[j];
  out.iterations_id = to_id.iterations;
  out.iterations_out = to_out.iterations;
  out.converged = to_id.converged && to_out.converged;
  if (!to_id.converged) {
    out.warnings.emplace_back("prototype transport not converged, residual " + std::to_string(to_id.marginal_residual));
  }
  if (!to_out.converged) {
    out.warnings.emplace_back("virtual-outlier transport not converged, residual " +
                              std::to_string(to_out.marginal_residual));
  }
  return out;
}

StreamScores score_stream(const PrototypeSet& prototypes, const FeatureMatrix& test, std::size_t batch_size,
                          std::uint64_t seed, const ScoreConfig& config, std::size_t threads) {
  if (batch_size < 2) {
    throw Error(ErrorKind::BatchTooSmall, "batch size must be at least 2, got " + std::to_string(batch_size));
  }
  const std::size_t m = test.rows();
  const auto perm = seeded_permutation(m, seed);
  const std::size_t num_batches = (m + batch_size - 1) / batch_size;

  StreamScores out;
  out.batches.resize(num_batches);
  std::vector<std::exception_ptr> failures(num_batches);

  auto run_batch = [&](std::size_t b) {
    try {
      const std::size_t begin = b * batch_size;
      const std::size_t end = std::min(m, begin + batch_size);
      const std::span<const std::size_t> idx(perm.data() + begin, end - begin);
      out.batches[b] = score_batch(prototypes, test.select_rows(idx), config, b);
    } catch (...) {
      failures[b] = std::current_exception();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, num_batches);
  if (workers == 1) {
    for (std::size_t b = 0; b < num_batches; ++b) run_batch(b);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < num_batches; b += workers) run_batch(b);
      });
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  out.scores.resize(m);
  out.t_id.resize(m);
  out.t_out.resize(m);
  out.batch_index.resize(m);
  for (std::size_t b = 0; b < num_batches; ++b) {
    const ScoredBatch& batch = out.batches[b];
    for (std::size_t k = 0; k < batch.scores.size(); ++k) {
      const std::size_t j = perm[b * batch_size + k];
      out.scores[j] = batch.scores[k];
      out.t_id[j] = batch.t_id[k];
      out.t_out[j] = batch.t_out[k];
      out.batch_index[j] = b;
    }
  }
  return out;
}

std::vector<double> baseline_scores(const LogitMatrix& logits, BaselineKind kind) {
  const FeatureMatrix& l = logits.values;
  std::vector<double> out(l.rows());
  for (std::size_t r = 0; r < l.rows(); ++r) {
    auto row = l.row(r);
    const double hi = *std::max_element(row.begin(), row.end());
    double acc = 0.0;
    for (double v : row) acc += std::exp(v - hi);
    // With the max subtracted, the largest softmax entry is exp(0) / acc.
    out[r] = kind == BaselineKind::Msp ? 1.0 / acc : hi + std::log(acc);
  }
  return out;
}

}  // namespace pot
