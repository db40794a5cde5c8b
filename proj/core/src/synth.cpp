#include "pot/synth.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pot/errors.hpp"
#include "pot/random.hpp"

namespace pot {
namespace {

void validate(const SynthSpec& s) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); };
  if (s.num_classes < 2) fail("num_classes must be at least 2");
  if (s.dim + 1 < s.num_classes) fail("dim must be at least num_classes - 1 to hold a regular simplex");
  if (!(s.radius > 0.0) || !std::isfinite(s.radius)) fail("radius must be positive");
  if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma)) fail("sigma must be nonnegative");
  if (s.train_per_class == 0) fail("train_per_class must be positive");
  if (s.test_id_count == 0) fail("test_id_count must be positive");
  std::size_t ood_total = 0;
  for (const auto& c : s.ood_clusters) {
    if (!(c.offset >= 0.0) || !std::isfinite(c.offset)) fail("OOD offset must be nonnegative");
    if (!(c.sigma >= 0.0) || !std::isfinite(c.sigma)) fail("OOD sigma must be nonnegative");
    ood_total += c.count;
  }
  if (ood_total == 0) fail("at least one OOD sample is required");
}

void draw_around(CounterRng& rng, std::span<const double> center, double sigma, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = center[k] + sigma * rng.normal();
}

}  // namespace

SynthSpec SynthSpec::far_ood(std::uint64_t seed) {
  SynthSpec s;
  s.seed = seed;
  s.ood_clusters = {OodCluster{s.radius, s.sigma, 200}};
  return s;
}

SynthSpec SynthSpec::near_ood(std::uint64_t seed) {
  SynthSpec s;
  s.seed = seed;
  s.ood_clusters = {OodCluster{2.0 * s.sigma, s.sigma, 200}};
  return s;
}

DenseMatrix regular_simplex(std::size_t count, std::size_t dim, double edge) {
  // Unit-edge simplex built one vertex at a time: each new vertex sits above
  // the centroid of the previous ones along a fresh axis.
  DenseMatrix v(count, dim);
  for (std::size_t k = 1; k < count; ++k) {
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += v(p, c);
    double r2 = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      centroid[c] /= static_cast<double>(k);
      r2 += (centroid[c] - v(0, c)) * (centroid[c] - v(0, c));
    }
    for (std::size_t c = 0; c < dim; ++c) v(k, c) = centroid[c];
    v(k, k - 1) = std::sqrt(1.0 - r2);
  }
  std::vector<double> mean(dim, 0.0);
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t c = 0; c < dim; ++c) mean[c] += v(p, c) / static_cast<double>(count);
  for (std::size_t p = 0; p < count; ++p)
    for (std::size_t c = 0; c < dim; ++c) v(p, c) = (v(p, c) - mean[c]) * edge;
  return v;
}

SynthData generate(const SynthSpec& spec) {
  validate(spec);
  const std::size_t C = spec.num_classes;
  const std::size_t d = spec.dim;
  const DenseMatrix centers = regular_simplex(C, d, spec.radius);

  std::vector<double> centroid(d, 0.0);
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t k = 0; k < d; ++k) centroid[k] += centers(c, k) / static_cast<double>(C);

  DenseMatrix ood_centers(spec.ood_clusters.size(), d);
  for (std::size_t q = 0; q < spec.ood_clusters.size(); ++q) {
    auto anchor = centers.row(q % C);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) norm2 += (anchor[k] - centroid[k]) * (anchor[k] - centroid[k]);
    const double norm = std::sqrt(norm2);
    for (std::size_t k = 0; k < d; ++k) {
      ood_centers(q, k) = anchor[k] + spec.ood_clusters[q].offset * (anchor[k] - centroid[k]) / norm;
    }
  }

  CounterRng rng(spec.seed);

  DenseMatrix train(C * spec.train_per_class, d);
  std::vector<std::size_t> train_labels(train.rows());
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t s = 0; s < spec.train_per_class; ++s) {
      const std::size_t r = c * spec.train_per_class + s;
      draw_around(rng, centers.row(c), spec.sigma, train.row(r));
      train_labels[r] = c;
    }
  }

  DenseMatrix test_id(spec.test_id_count, d);
  std::vector<std::size_t> test_labels(spec.test_id_count);
  for (std::size_t s = 0; s < spec.test_id_count; ++s) {
    test_labels[s] = s % C;
    draw_around(rng, centers.row(s % C), spec.sigma, test_id.row(s));
  }

  std::size_t ood_total = 0;
  for (const auto& q : spec.ood_clusters) ood_total += q.count;
  DenseMatrix test_ood(ood_total, d);
  std::size_t r = 0;
  for (std::size_t q = 0; q < spec.ood_clusters.size(); ++q) {
    for (std::size_t s = 0; s < spec.ood_clusters[q].count; ++s, ++r) {
      draw_around(rng, ood_centers.row(q), spec.ood_clusters[q].sigma, test_ood.row(r));
    }
  }

  return SynthData{LabeledDataset(FeatureMatrix(std::move(train)), std::move(train_labels), C),
                   FeatureMatrix(std::move(test_id)),
                   std::move(test_labels),
                   FeatureMatrix(std::move(test_ood)),
                   centers,
                   std::move(ood_centers)};
}

}  // namespace pot
