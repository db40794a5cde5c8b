#pragma once

#include <span>

#include "pot/matrix.hpp"

namespace pot {

struct Atom {
  double position;
  double mass;
};

struct ExactTransport {
  DenseMatrix plan;  // |a| x |b|
  double total_cost = 0.0;
};

// Exact optimal transport on the real line with cost |x - y|. For sorted
// inputs the monotone (north-west corner) coupling is optimal, so this is
// the reference the entropic solver is checked against.
// Throws UnsortedInput or MassMismatch.
ExactTransport exact_ot_1d(std::span<const Atom> a, std::span<const Atom> b);

}  // namespace pot
