#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pot/matrix.hpp"
#include "pot/prototypes.hpp"

namespace pot {

// Ground cost between C source points (rows) and m target points (columns).
// Entries are finite and nonnegative.
class CostMatrix {
 public:
  explicit CostMatrix(DenseMatrix entries);

  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const DenseMatrix& entries() const noexcept { return entries_; }

  CostMatrix transposed() const { return CostMatrix(entries_.transposed()); }
  CostMatrix scaled(double s) const;

 private:
  DenseMatrix entries_;
};

// E_ij = || a_i - b_j ||_2 over the rows of a and b.
CostMatrix euclidean_cost(const FeatureMatrix& sources, const FeatureMatrix& targets);
CostMatrix euclidean_cost(const PrototypeSet& prototypes, const FeatureMatrix& test);

struct Marginals {
  std::vector<double> mu;  // source masses, length C
  std::vector<double> nu;  // target masses, length m

  // Prototype masses against a uniform 1/m target measure.
  static Marginals uniform_targets(std::span<const double> mu, std::size_t m);
};

enum class Stabilization { Plain, LogDomain };

struct SolverConfig {
  double lambda = 1.0;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-8;
  Stabilization stabilization = Stabilization::LogDomain;
};

struct TransportSolution {
  CostMatrix cost;
  DenseMatrix plan;                    // C x m
  std::vector<double> per_sample_cost; // T_j = sum_i E_ij plan_ij
  double total_cost = 0.0;             // <E, plan>, summed row-major
  std::size_t iterations = 0;
  double marginal_residual = 0.0;      // max-norm violation of both marginals
  double lambda = 0.0;
  bool converged = false;
};

// Entropic OT by Sinkhorn-Knopp matrix scaling. Stops once the max-norm
// residual of both marginal constraints drops to config.tolerance, or after
// config.max_iterations; in the latter case the result has converged = false.
//
// Plain mode iterates on the scaling vectors directly and throws
// NumericalUnderflow when exp(-E/lambda) loses all mass on some row or
// column; LogDomain iterates on their logarithms with log-sum-exp and does
// not underflow.
TransportSolution sinkhorn(const CostMatrix& cost, const Marginals& marginals, const SolverConfig& config);

// Recomputes the per-sample costs from a solution's plan.
std::vector<double> decompose_cost(const TransportSolution& solution);

// factor * median(E). Falls back to the largest entry when the median is
// zero, and to factor itself when every entry is zero.
double relative_lambda(const CostMatrix& cost, double factor);

}  // namespace pot
