#include <gtest/gtest.h>

#include "pot/exact_ot.hpp"
#include "support/errors.hpp"

namespace pot {
namespace {

using testing::kind_of;

TEST(ExactOt1d, SingleAtoms) {
  const std::vector<Atom> a{{0.0, 1.0}}, b{{5.0, 1.0}};
  EXPECT_EQ(exact_ot_1d(a, b).total_cost, 5.0);
}

TEST(ExactOt1d, IdenticalMeasuresCostNothing) {
  const std::vector<Atom> a{{0.0, 0.5}, {1.0, 0.5}};
  const auto r = exact_ot_1d(a, a);
  EXPECT_EQ(r.total_cost, 0.0);
  EXPECT_EQ(r.plan, DenseMatrix(2, 2, {0.5, 0.0, 0.0, 0.5}));
}

TEST(ExactOt1d, SplitToMiddle) {
  // The 2x1 polytope is the single point [[0.5], [0.5]].
  const std::vector<Atom> a{{0.0, 0.5}, {2.0, 0.5}}, b{{1.0, 1.0}};
  const auto r = exact_ot_1d(a, b);
  EXPECT_EQ(r.plan, DenseMatrix(2, 1, {0.5, 0.5}));
  EXPECT_EQ(r.total_cost, 1.0);
}

TEST(ExactOt1d, MonotoneIsOptimalOnThreeByThree) {
  // Brute force: the 3x3 polytope with uniform marginals has the six scaled
  // permutation matrices as vertices; the LP optimum is the cheapest one.
  const std::vector<Atom> a{{0.0, 1.0 / 3}, {0.4, 1.0 / 3}, {2.0, 1.0 / 3}};
  const std::vector<Atom> b{{0.1, 1.0 / 3}, {1.5, 1.0 / 3}, {1.7, 1.0 / 3}};
  std::vector<int> perm{0, 1, 2};
  double best = 1e300;
  do {
    double c = 0.0;
    for (int i = 0; i < 3; ++i) c += std::abs(a[i].position - b[perm[i]].position) / 3.0;
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_NEAR(exact_ot_1d(a, b).total_cost, best, 1e-15);
}

TEST(ExactOt1d, Errors) {
  const std::vector<Atom> unsorted{{1.0, 0.5}, {0.0, 0.5}}, ok{{0.0, 1.0}}, light{{0.0, 0.6}};
  EXPECT_EQ(kind_of([&] { exact_ot_1d(unsorted, ok); }), ErrorKind::UnsortedInput);
  EXPECT_EQ(kind_of([&] { exact_ot_1d(ok, light); }), ErrorKind::MassMismatch);
}

}  // namespace
}  // namespace pot
