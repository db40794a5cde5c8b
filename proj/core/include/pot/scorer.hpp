#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pot/matrix.hpp"
#include "pot/prototypes.hpp"
#include "pot/transport.hpp"

namespace pot {

// How the entropic coefficient is chosen for each batch.
struct LambdaPolicy {
  enum class Mode { Relative, Fixed };
  Mode mode = Mode::Relative;
  double value = 0.5;

  static LambdaPolicy relative(double factor) { return {Mode::Relative, factor}; }
  static LambdaPolicy fixed(double lambda) { return {Mode::Fixed, lambda}; }

  double resolve(const CostMatrix& cost) const;
};

struct ScoreConfig {
  double omega = 2.0;
  LambdaPolicy lambda;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-8;
  Stabilization stabilization = Stabilization::LogDomain;

  SolverConfig solver(double resolved_lambda) const {
    return {resolved_lambda, max_iterations, tolerance, stabilization};
  }
};

struct VirtualOutlierSet {
  FeatureMatrix outliers;      // C x d, row i extrapolated from prototype i
  std::vector<double> masses;  // carried over from the prototypes
  double omega = 0.0;
  std::vector<double> test_mean;
  // Some prototype coincides with the test mean, so its outlier equals it.
  bool degenerate = false;
};

struct ScoredBatch {
  std::vector<double> scores;  // t_id - t_out; higher means more likely OOD
  std::vector<double> t_id;
  std::vector<double> t_out;
  std::size_t batch_index = 0;
  double lambda = 0.0;
  double omega = 0.0;
  std::size_t batch_size = 0;
  std::size_t iterations_id = 0;
  std::size_t iterations_out = 0;
  bool converged = true;  // both solves met the tolerance
  std::vector<std::string> warnings;
};

struct StreamScores {
  // All indexed by original sample position.
  std::vector<double> scores;
  std::vector<double> t_id;
  std::vector<double> t_out;
  std::vector<std::size_t> batch_index;
  std::vector<ScoredBatch> batches;  // in batch order; per-batch vectors are in batch order
};

std::vector<double> test_mean(const FeatureMatrix& test);

// eta*_i = eta_i + omega (M - eta_i). Throws OmegaOutOfRange unless omega > 1.
VirtualOutlierSet make_virtual_outliers(const PrototypeSet& prototypes, std::span<const double> mean, double omega);

// Two transport solves against the same test batch: prototypes -> T and
// virtual outliers -> T*. The same lambda, resolved from the prototype cost
// matrix, is used for both.
ScoredBatch score_batch(const PrototypeSet& prototypes, const FeatureMatrix& test, const ScoreConfig& config,
                        std::size_t batch_index = 0);

// Shuffles samples with seeded_permutation(m, seed), scores consecutive
// batches of batch_size (the last may be shorter) and scatters the results
// back to the original order. Batches run on up to `threads` threads; output
// does not depend on the thread count.
StreamScores score_stream(const PrototypeSet& prototypes, const FeatureMatrix& test, std::size_t batch_size,
                          std::uint64_t seed, const ScoreConfig& config, std::size_t threads = 1);

enum class BaselineKind { Msp, Energy };

// Logit baselines, higher = more in-distribution.
//   msp:    max_c softmax(l)_c
//   energy: log sum_c exp(l_c)
std::vector<double> baseline_scores(const LogitMatrix& logits, BaselineKind kind);

}  // namespace pot
