#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "pot/prototypes.hpp"
#include "pot/random.hpp"
#include "support/errors.hpp"

namespace pot {
namespace {

using testing::kind_of;

TEST(Prototypes, ClassMeansAndMasses) {
  const LabeledDataset ds(FeatureMatrix(3, 2, {0, 0, 2, 2, 4, 0}), {0, 0, 1});
  const PrototypeSet p = prototypes_from_data(ds);
  ASSERT_EQ(p.num_classes(), 2u);
  EXPECT_EQ(p.vectors()(0, 0), 1.0);
  EXPECT_EQ(p.vectors()(0, 1), 1.0);
  EXPECT_EQ(p.vectors()(1, 0), 4.0);
  EXPECT_EQ(p.vectors()(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(p.masses()[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.masses()[1], 1.0 / 3.0);
  EXPECT_EQ(p.source(), PrototypeSource::FromData);
}

TEST(Prototypes, EmptyClass) {
  const LabeledDataset ds(FeatureMatrix(3, 1, {1, 2, 3}), {0, 0, 0}, 2);
  EXPECT_EQ(kind_of([&] { prototypes_from_data(ds); }), ErrorKind::EmptyClass);
}

TEST(Prototypes, SingleSamplePerClassIsIdentity) {
  const FeatureMatrix x(3, 2, {1, 2, 3, 4, 5, 6});
  const PrototypeSet p = prototypes_from_data(LabeledDataset(x, {0, 1, 2}));
  EXPECT_EQ(p.vectors(), x);
  for (double m : p.masses()) EXPECT_DOUBLE_EQ(m, 1.0 / 3.0);
}

TEST(Prototypes, FromWeightsTakesColumns) {
  const PrototypeSet id = prototypes_from_weights(DenseMatrix(2, 2, {1, 0, 0, 1}));
  EXPECT_EQ(id.vectors(), FeatureMatrix(2, 2, {1, 0, 0, 1}));
  EXPECT_EQ(id.masses(), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(id.source(), PrototypeSource::FromWeights);

  // d = 3, C = 2, columns (1,1,1) and (2,2,2).
  const PrototypeSet p = prototypes_from_weights(DenseMatrix(3, 2, {1, 2, 1, 2, 1, 2}));
  EXPECT_EQ(p.vectors(), FeatureMatrix(2, 3, {1, 1, 1, 2, 2, 2}));
}

TEST(Prototypes, FromWeightsRejectsInfAndSingleClass) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of([&] { prototypes_from_weights(DenseMatrix(2, 2, {1, inf, 0, 1})); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([] { prototypes_from_weights(DenseMatrix(2, 1, {1, 0})); }), ErrorKind::InvalidArgument);
}

TEST(Prototypes, MassesSumToOne) {
  CounterRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t C = 2 + rng.below(15), n = C + rng.below(200);
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i < C ? i : rng.below(C);
    std::vector<double> x(n * 3);
    for (double& v : x) v = rng.normal();
    const PrototypeSet p = prototypes_from_data(LabeledDataset(FeatureMatrix(n, 3, x), labels));
    const double total = std::accumulate(p.masses().begin(), p.masses().end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (double m : p.masses()) EXPECT_GT(m, 0.0);
  }
}

TEST(Prototypes, PermutationInvariant) {
  CounterRng rng(5);
  const std::size_t n = 300, d = 8, C = 4;
  std::vector<double> x(n * d);
  for (double& v : x) v = 10.0 * rng.normal();
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % C;
  const FeatureMatrix X(n, d, x);
  const PrototypeSet ref = prototypes_from_data(LabeledDataset(X, labels));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto perm = seeded_permutation(n, seed);
    std::vector<std::size_t> plabels(n);
    for (std::size_t k = 0; k < n; ++k) plabels[k] = labels[perm[k]];
    const PrototypeSet p = prototypes_from_data(LabeledDataset(X.select_rows(perm), plabels));
    EXPECT_EQ(p.masses(), ref.masses());
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t k = 0; k < d; ++k) {
        const double a = p.vectors()(c, k), b = ref.vectors()(c, k);
        EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(b)));
      }
  }
}

TEST(Prototypes, Normalization) {
  const PrototypeSet p = l2_normalized(prototypes_from_weights(DenseMatrix(2, 2, {3, 0, 4, 2})));
  EXPECT_DOUBLE_EQ(p.vectors()(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(p.vectors()(0, 1), 0.8);
  EXPECT_DOUBLE_EQ(p.vectors()(1, 1), 1.0);
}

}  // namespace
}  // namespace pot
