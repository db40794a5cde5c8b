#include "pot/prototypes.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pot/errors.hpp"

namespace pot {

PrototypeSet::PrototypeSet(FeatureMatrix vectors, std::vector<double> masses, PrototypeSource source)
    : vectors_(std::move(vectors)), masses_(std::move(masses)), source_(source) {
  if (vectors_.rows() < 2) {
    throw Error(ErrorKind::InvalidArgument, "need at least two prototypes, got " + std::to_string(vectors_.rows()));
  }
  if (masses_.size() != vectors_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(masses_.size()) + " masses for " +
                                                  std::to_string(vectors_.rows()) + " prototypes");
  }
  double total = 0.0;
  for (double p : masses_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorKind::MassMismatch, "prototype mass must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::MassMismatch, "prototype masses sum to " + std::to_string(total));
  }
}

PrototypeSet prototypes_from_data(const LabeledDataset& train) {
  const std::size_t num_classes = train.num_classes();
  const FeatureMatrix& x = train.features();
  const auto& labels = train.labels();

  DenseMatrix sums(num_classes, x.cols());
  std::vector<std::size_t> counts(num_classes, 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::size_t c = labels[i];
    auto acc = sums.row(c);
    auto z = x.row(i);
    for (std::size_t k = 0; k < z.size(); ++k) acc[k] += z[k];
    ++counts[c];
  }

  std::vector<double> masses(num_classes);
  const double n = static_cast<double>(x.rows());
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (counts[c] == 0) throw Error(ErrorKind::EmptyClass, "class " + std::to_string(c) + " has no samples");
    const double nc = static_cast<double>(counts[c]);
    for (double& v : sums.row(c)) v /= nc;
    masses[c] = nc / n;
  }
  return PrototypeSet(FeatureMatrix(std::move(sums)), std::move(masses), PrototypeSource::FromData);
}

PrototypeSet prototypes_from_weights(const DenseMatrix& weights) {
  const std::size_t dim = weights.rows();
  const std::size_t num_classes = weights.cols();
  if (num_classes < 2) {
    throw Error(ErrorKind::InvalidArgument, "weight matrix must have at least two columns (classes)");
  }
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < num_classes; ++c)
      if (!std::isfinite(weights(r, c))) {
        throw Error(ErrorKind::NonFiniteValue, "weight row " + std::to_string(r) + ", column " + std::to_string(c));
      }
  return PrototypeSet(FeatureMatrix(weights.transposed()),
                      std::vector<double>(num_classes, 1.0 / static_cast<double>(num_classes)),
                      PrototypeSource::FromWeights);
}

PrototypeSet l2_normalized(const PrototypeSet& set) {
  return PrototypeSet(l2_normalize_rows(set.vectors()), set.masses(), set.source());
}

}  // namespace pot
