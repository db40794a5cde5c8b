#include "pot/exact_ot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pot/errors.hpp"

namespace pot {
namespace {

void validate(std::span<const Atom> atoms, const char* name) {
  if (atoms.empty()) throw Error(ErrorKind::EmptyInput, std::string(name) + " has no atoms");
  double total = 0.0;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!std::isfinite(atoms[k].position)) {
      throw Error(ErrorKind::NonFiniteValue, std::string(name) + " atom " + std::to_string(k));
    }
    if (!(atoms[k].mass >= 0.0)) {
      throw Error(ErrorKind::MassMismatch, std::string(name) + " atom " + std::to_string(k) + " has negative mass");
    }
    if (k > 0 && atoms[k].position < atoms[k - 1].position) {
      throw Error(ErrorKind::UnsortedInput, std::string(name) + " atom " + std::to_string(k));
    }
    total += atoms[k].mass;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::MassMismatch, std::string(name) + " masses sum to " + std::to_string(total));
  }
}

}  // namespace

ExactTransport exact_ot_1d(std::span<const Atom> a, std::span<const Atom> b) {
  validate(a, "a");
  validate(b, "b");

  ExactTransport out{DenseMatrix(a.size(), b.size()), 0.0};
  std::size_t i = 0, j = 0;
  double left_a = a[0].mass, left_b = b[0].mass;
  while (i < a.size() && j < b.size()) {
    const double moved = std::min(left_a, left_b);
    out.plan(i, j) += moved;
    out.total_cost += moved * std::abs(a[i].position - b[j].position);
    left_a -= moved;
    left_b -= moved;
    // Whichever side is exhausted advances; on an exact tie both do.
    const bool advance_a = left_a <= left_b;
    const bool advance_b = left_b <= left_a;
    if (advance_a && ++i < a.size()) left_a = a[i].mass;
    if (advance_b && ++j < b.size()) left_b = b[j].mass;
  }
  return out;
}

}  // namespace pot
