#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pot/ingest.hpp"
#include "pot/matrix.hpp"

namespace pot {

enum class PrototypeSource { FromData, FromWeights };

// C class prototypes (one per row) with the probability mass each carries in
// the transport problem. Masses are nonnegative and sum to one.
class PrototypeSet {
 public:
  PrototypeSet(FeatureMatrix vectors, std::vector<double> masses, PrototypeSource source);

  std::size_t num_classes() const noexcept { return vectors_.rows(); }
  std::size_t dim() const noexcept { return vectors_.cols(); }
  const FeatureMatrix& vectors() const noexcept { return vectors_; }
  std::span<const double> prototype(std::size_t c) const { return vectors_.row(c); }
  const std::vector<double>& masses() const noexcept { return masses_; }
  PrototypeSource source() const noexcept { return source_; }

 private:
  FeatureMatrix vectors_;
  std::vector<double> masses_;
  PrototypeSource source_;
};

// Class-wise mean embedding, with mass N_c / n. Throws EmptyClass if any
// class in [0, num_classes) has no samples.
PrototypeSet prototypes_from_data(const LabeledDataset& train);

// Columns of a d x C classifier weight matrix become the prototypes; masses
// are uniform since no class counts exist in this mode.
PrototypeSet prototypes_from_weights(const DenseMatrix& weights);

PrototypeSet l2_normalized(const PrototypeSet& set);

}  // namespace pot
