#pragma once

#include <cstddef>
#include <span>

namespace pot {

enum class Orientation { HigherIsOod, HigherIsId };

// Mann-Whitney AUROC with OOD as the positive class: the probability that a
// random OOD sample ranks above a random ID sample, ties counted as 1/2.
// Computed from average-rank sums in O(n log n). HigherIsId returns exactly
// 1 - (the HigherIsOod value).
double auroc(std::span<const double> scores_id, std::span<const double> scores_ood, Orientation orientation);

struct FprAtTpr {
  double fpr = 0.0;
  double threshold = 0.0;  // in the caller's score units
};

// ID samples are positives. The threshold is the largest ID-side score t for
// which at least tpr_target of the ID samples satisfy score >= t (score <= t
// when HigherIsOod); fpr is the fraction of OOD samples on the same side.
FprAtTpr fpr_at_tpr(std::span<const double> scores_id, std::span<const double> scores_ood, double tpr_target = 0.95,
                    Orientation orientation = Orientation::HigherIsId);

struct EvalReport {
  double auroc = 0.0;
  double fpr95 = 0.0;
  double threshold_at_tpr95 = 0.0;
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
};

EvalReport evaluate(std::span<const double> scores_id, std::span<const double> scores_ood, Orientation orientation);

}  // namespace pot
