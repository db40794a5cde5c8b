#include "pot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pot/errors.hpp"

namespace pot {
namespace {

void check_scores(std::span<const double> id, std::span<const double> ood) {
  if (id.empty() || ood.empty()) {
    throw Error(ErrorKind::EmptyInput, "need at least one ID and one OOD score, got " + std::to_string(id.size()) +
                                           " and " + std::to_string(ood.size()));
  }
  auto bad = [](double v) { return !std::isfinite(v); };
  if (std::any_of(id.begin(), id.end(), bad) || std::any_of(ood.begin(), ood.end(), bad)) {
    throw Error(ErrorKind::NonFiniteValue, "scores must be finite");
  }
}

double auroc_ood_positive(std::span<const double> id, std::span<const double> ood) {
  struct Entry {
    double score;
    bool is_ood;
  };
  std::vector<Entry> all;
  all.reserve(id.size() + ood.size());
  for (double s : id) all.push_back({s, false});
  for (double s : ood) all.push_back({s, true});
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.score < b.score; });

  // Ranks are 1-based; a tie block [lo, hi) shares rank (lo + 1 + hi) / 2,
  // a half-integer, so the rank sum is exact in double.
  double ood_rank_sum = 0.0;
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo + 1;
    while (hi < all.size() && all[hi].score == all[lo].score) ++hi;
    const double rank = 0.5 * static_cast<double>(lo + 1 + hi);
    for (std::size_t k = lo; k < hi; ++k)
      if (all[k].is_ood) ood_rank_sum += rank;
    lo = hi;
  }
  const double n_ood = static_cast<double>(ood.size());
  const double u = ood_rank_sum - n_ood * (n_ood + 1.0) / 2.0;
  return u / (static_cast<double>(id.size()) * n_ood);
}

}  // namespace

double auroc(std::span<const double> scores_id, std::span<const double> scores_ood, Orientation orientation) {
  check_scores(scores_id, scores_ood);
  const double a = auroc_ood_positive(scores_id, scores_ood);
  return orientation == Orientation::HigherIsOod ? a : 1.0 - a;
}

FprAtTpr fpr_at_tpr(std::span<const double> scores_id, std::span<const double> scores_ood, double tpr_target,
                    Orientation orientation) {
  check_scores(scores_id, scores_ood);
  if (!(tpr_target > 0.0 && tpr_target <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "tpr_target must lie in (0, 1]");
  }
  // Work in "higher is ID" units.
  const double sign = orientation == Orientation::HigherIsId ? 1.0 : -1.0;
  std::vector<double> id(scores_id.size());
  std::transform(scores_id.begin(), scores_id.end(), id.begin(), [sign](double s) { return sign * s; });
  std::sort(id.begin(), id.end(), std::greater<>());

  const double n_id = static_cast<double>(id.size());
  std::size_t k = 1;
  while (static_cast<double>(k) / n_id < tpr_target) ++k;
  const double t = id[k - 1];

  std::size_t false_pos = 0;
  for (double s : scores_ood)
    if (sign * s >= t) ++false_pos;
  return {static_cast<double>(false_pos) / static_cast<double>(scores_ood.size()), sign * t};
}

EvalReport evaluate(std::span<const double> scores_id, std::span<const double> scores_ood, Orientation orientation) {
  const FprAtTpr f = fpr_at_tpr(scores_id, scores_ood, 0.95, orientation);
  return {auroc(scores_id, scores_ood, orientation), f.fpr, f.threshold, scores_id.size(), scores_ood.size()};
}

}  // namespace pot
