#include <gtest/gtest.h>

#include <cmath>

#include "pot/metrics.hpp"
#include "pot/random.hpp"
#include "support/errors.hpp"
#include "support/oracles.hpp"

namespace pot {
namespace {

using testing::kind_of;
constexpr auto kOod = Orientation::HigherIsOod;
constexpr auto kId = Orientation::HigherIsId;

std::vector<double> draw(CounterRng& rng, std::size_t n, std::size_t levels) {
  // Few distinct levels -> many ties.
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng.below(levels)) - 2.0;
  return v;
}

TEST(Auroc, Examples) {
  const std::vector<double> a{0, 1}, b{2, 3}, c{1, 2, 3}, d{2, 3, 4};
  EXPECT_EQ(auroc(a, b, kOod), 1.0);
  EXPECT_EQ(auroc(a, a, kOod), 0.5);
  // Pairs (ood, id): 2 beats 1 and ties 2; 3 beats 1, 2 and ties 3; 4 beats all.
  EXPECT_EQ(testing::brute_force_auroc(c, d), 7.0 / 9.0);
  EXPECT_EQ(auroc(c, d, kOod), 7.0 / 9.0);
}

TEST(Auroc, EmptyAndNonFinite) {
  const std::vector<double> empty, one{1.0}, nan{std::nan("")};
  EXPECT_EQ(kind_of([&] { auroc(empty, one, kOod); }), ErrorKind::EmptyInput);
  EXPECT_EQ(kind_of([&] { auroc(one, nan, kOod); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([&] { fpr_at_tpr(one, empty); }), ErrorKind::EmptyInput);
}

TEST(Auroc, MatchesPairwiseOracleExactly) {
  CounterRng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n_id = 1 + rng.below(25), n_ood = 1 + rng.below(25);
    const std::size_t levels = 1 + rng.below(6);
    const auto id = draw(rng, n_id, levels), ood = draw(rng, n_ood, levels);
    EXPECT_EQ(auroc(id, ood, kOod), testing::brute_force_auroc(id, ood));
  }
}

TEST(Auroc, Antisymmetry) {
  CounterRng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto id = draw(rng, 1 + rng.below(40), 5), ood = draw(rng, 1 + rng.below(40), 5);
    EXPECT_EQ(auroc(id, ood, kId), 1.0 - auroc(id, ood, kOod));
  }
}

TEST(Metrics, MonotoneTransformInvariance) {
  CounterRng rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> id(1 + rng.below(40)), ood(1 + rng.below(40));
    for (double& x : id) x = std::round(4.0 * rng.normal()) / 2.0;
    for (double& x : ood) x = std::round(4.0 * rng.normal()) / 2.0 + 1.0;
    auto apply = [](std::vector<double> v, auto f) {
      for (double& x : v) x = f(x);
      return v;
    };
    const auto affine = [](double x) { return 3.0 * x + 1.0; };
    const auto cube = [](double x) { return x * x * x; };
    for (auto o : {kOod, kId}) {
      const double base = auroc(id, ood, o);
      EXPECT_EQ(auroc(apply(id, affine), apply(ood, affine), o), base);
      EXPECT_EQ(auroc(apply(id, cube), apply(ood, cube), o), base);
      const double fpr = fpr_at_tpr(id, ood, 0.95, o).fpr;
      EXPECT_EQ(fpr_at_tpr(apply(id, affine), apply(ood, affine), 0.95, o).fpr, fpr);
      EXPECT_EQ(fpr_at_tpr(apply(id, cube), apply(ood, cube), 0.95, o).fpr, fpr);
    }
  }
}

TEST(FprAtTpr, ConstantIdAboveOod) {
  const std::vector<double> id(20, 1.0), ood{0.0, 0.5, 0.99, -3.0};
  const auto r = fpr_at_tpr(id, ood, 0.95, kId);
  EXPECT_EQ(r.fpr, 0.0);
  EXPECT_EQ(r.threshold, 1.0);
}

TEST(FprAtTpr, HundredDistinctValues) {
  std::vector<double> v(100);
  for (std::size_t k = 0; k < 100; ++k) v[k] = static_cast<double>(k + 1);
  const auto r = fpr_at_tpr(v, v, 0.95, kId);
  const auto oracle = testing::brute_force_fpr(v, v, 0.95);
  EXPECT_EQ(r.threshold, 6.0);  // 6th-smallest ID value keeps 95 of 100
  EXPECT_EQ(r.threshold, oracle.threshold);
  EXPECT_EQ(r.fpr, oracle.fpr);
  EXPECT_EQ(r.fpr, 0.95);
}

TEST(FprAtTpr, FullTprUsesMinimum) {
  const std::vector<double> id{3, 1, 2}, ood{0, 1.5};
  const auto r = fpr_at_tpr(id, ood, 1.0, kId);
  EXPECT_EQ(r.threshold, 1.0);
  EXPECT_EQ(r.fpr, 0.5);
  EXPECT_EQ(kind_of([&] { fpr_at_tpr(id, ood, 0.0, kId); }), ErrorKind::InvalidArgument);
}

TEST(FprAtTpr, MatchesThresholdScanExactly) {
  CounterRng rng(83);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t levels = 1 + rng.below(8);
    const auto id = draw(rng, 1 + rng.below(25), levels), ood = draw(rng, 1 + rng.below(25), levels);
    for (double target : {0.95, 0.5, 1.0, 0.8}) {
      const auto r = fpr_at_tpr(id, ood, target, kId);
      const auto o = testing::brute_force_fpr(id, ood, target);
      EXPECT_EQ(r.fpr, o.fpr);
      EXPECT_EQ(r.threshold, o.threshold);
    }
  }
}

TEST(FprAtTpr, OodOrientationNegates) {
  const std::vector<double> id{-1, -2, -3}, ood{-2.5, 5};
  const auto r = fpr_at_tpr(id, ood, 1.0, kOod);
  // ID accepted when score <= -1; OOD at -2.5 falls on the ID side.
  EXPECT_EQ(r.threshold, -1.0);
  EXPECT_EQ(r.fpr, 0.5);
}

TEST(Evaluate, Report) {
  const std::vector<double> id{0, 1, 2}, ood{5, 6};
  const EvalReport r = evaluate(id, ood, kOod);
  EXPECT_EQ(r.auroc, 1.0);
  EXPECT_EQ(r.fpr95, 0.0);
  EXPECT_EQ(r.n_id, 3u);
  EXPECT_EQ(r.n_ood, 2u);
}

}  // namespace
}  // namespace pot
