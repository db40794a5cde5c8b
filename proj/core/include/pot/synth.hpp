#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pot/ingest.hpp"
#include "pot/matrix.hpp"

namespace pot {

struct OodCluster {
  double offset = 8.0;  // distance from the anchoring ID center
  double sigma = 0.5;
  std::size_t count = 200;
};

// Gaussian-mixture benchmark. ID centers are the vertices of a regular
// simplex with edge length `radius`, centred at the origin of the first
// C - 1 coordinates. OOD cluster k sits `offset` beyond ID center (k mod C),
// along the ray from the ID centroid through that center.
struct SynthSpec {
  std::size_t num_classes = 3;
  std::size_t dim = 32;
  double radius = 8.0;
  double sigma = 0.5;
  std::size_t train_per_class = 200;
  std::size_t test_id_count = 200;  // assigned to classes round-robin
  std::vector<OodCluster> ood_clusters{OodCluster{}};
  std::uint64_t seed = 0;

  // Far-OOD: one cluster at distance `radius` from its anchor.
  static SynthSpec far_ood(std::uint64_t seed);
  // Near-OOD: one cluster at distance 2 * sigma from its anchor.
  static SynthSpec near_ood(std::uint64_t seed);
};

struct SynthData {
  LabeledDataset train;
  FeatureMatrix test_id;
  std::vector<std::size_t> test_id_labels;
  FeatureMatrix test_ood;
  DenseMatrix id_centers;   // C x d
  DenseMatrix ood_centers;  // K x d
};

// Throws InvalidSpec. Draw order: train (class-major), test ID, then each
// OOD cluster; all from one CounterRng(seed) stream.
SynthData generate(const SynthSpec& spec);

// C points with all pairwise distances equal to edge, centred at the origin,
// occupying the first C - 1 of dim coordinates.
DenseMatrix regular_simplex(std::size_t count, std::size_t dim, double edge);

}  // namespace pot
