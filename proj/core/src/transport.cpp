#include "pot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pot/errors.hpp"

namespace pot {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_probability_vector(std::span<const double> p, const char* name) {
  if (p.empty()) throw Error(ErrorKind::EmptyInput, std::string(name) + " is empty");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::MassMismatch, std::string(name) + " has a negative or non-finite entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::MassMismatch, std::string(name) + " sums to " + std::to_string(total));
  }
}

double log_or_neg_inf(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

// Max over i of |rowsum_i - mu_i| and over j of |colsum_j - nu_j| for the
// plan exp(log_a_i + logK_ij + log_b_j), or a_i K_ij b_j in linear space.
struct Residual {
  double rows = 0.0;
  double cols = 0.0;
  double max() const { return std::max(rows, cols); }
};

class PlainSolver {
 public:
  PlainSolver(const CostMatrix& cost, const Marginals& marg, const SolverConfig& cfg)
      : cost_(cost), marg_(marg), cfg_(cfg), C_(cost.rows()), m_(cost.cols()),
        K_(C_, m_), a_(C_, 1.0), b_(m_, 1.0), Kb_(C_), Kta_(m_) {
    for (std::size_t i = 0; i < C_; ++i)
      for (std::size_t j = 0; j < m_; ++j) K_(i, j) = std::exp(-cost(i, j) / cfg.lambda);
    multiply_K_b();
  }

  TransportSolution run() {
    TransportSolution sol{cost_, {}, {}, 0.0, 0, std::numeric_limits<double>::infinity(), cfg_.lambda, false};
    for (std::size_t it = 1; it <= cfg_.max_iterations; ++it) {
      // a <- mu / (K b); Kb_ is current from the previous residual check.
      for (std::size_t i = 0; i < C_; ++i) a_[i] = scale(marg_.mu[i], Kb_[i], "row", i);
      multiply_Kt_a();
      for (std::size_t j = 0; j < m_; ++j) b_[j] = scale(marg_.nu[j], Kta_[j], "column", j);

      multiply_K_b();
      Residual res;
      for (std::size_t i = 0; i < C_; ++i) res.rows = std::max(res.rows, std::abs(a_[i] * Kb_[i] - marg_.mu[i]));
      for (std::size_t j = 0; j < m_; ++j) res.cols = std::max(res.cols, std::abs(b_[j] * Kta_[j] - marg_.nu[j]));

      sol.iterations = it;
      sol.marginal_residual = res.max();
      if (!std::isfinite(sol.marginal_residual)) {
        throw Error(ErrorKind::NumericalUnderflow, "non-finite scaling after iteration " + std::to_string(it));
      }
      if (sol.marginal_residual <= cfg_.tolerance) {
        sol.converged = true;
        break;
      }
    }
    sol.plan = DenseMatrix(C_, m_);
    for (std::size_t i = 0; i < C_; ++i)
      for (std::size_t j = 0; j < m_; ++j) sol.plan(i, j) = a_[i] * K_(i, j) * b_[j];
    return sol;
  }

 private:
  double scale(double mass, double denom, const char* what, std::size_t index) const {
    if (mass == 0.0) return 0.0;
    const double v = mass / denom;
    if (denom == 0.0 || !std::isfinite(v)) {
      throw Error(ErrorKind::NumericalUnderflow,
                  std::string("kernel mass vanished on ") + what + " " + std::to_string(index) +
                      " (lambda " + std::to_string(cfg_.lambda) + "); retry with log-domain stabilization");
    }
    return v;
  }

  void multiply_K_b() {
    for (std::size_t i = 0; i < C_; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m_; ++j) acc += K_(i, j) * b_[j];
      Kb_[i] = acc;
    }
  }

  void multiply_Kt_a() {
    std::fill(Kta_.begin(), Kta_.end(), 0.0);
    for (std::size_t i = 0; i < C_; ++i)
      for (std::size_t j = 0; j < m_; ++j) Kta_[j] += K_(i, j) * a_[i];
  }

  const CostMatrix& cost_;
  const Marginals& marg_;
  const SolverConfig& cfg_;
  std::size_t C_, m_;
  DenseMatrix K_;
  std::vector<double> a_, b_, Kb_, Kta_;
};

class LogDomainSolver {
 public:
  LogDomainSolver(const CostMatrix& cost, const Marginals& marg, const SolverConfig& cfg)
      : cost_(cost), marg_(marg), cfg_(cfg), C_(cost.rows()), m_(cost.cols()), logK_(C_, m_),
        log_mu_(C_), log_nu_(m_), log_a_(C_, 0.0), log_b_(m_, 0.0), lse_rows_(C_), lse_cols_(m_),
        scratch_(std::max(C_, m_)) {
    for (std::size_t i = 0; i < C_; ++i)
      for (std::size_t j = 0; j < m_; ++j) logK_(i, j) = -cost(i, j) / cfg.lambda;
    for (std::size_t i = 0; i < C_; ++i) log_mu_[i] = log_or_neg_inf(marg.mu[i]);
    for (std::size_t j = 0; j < m_; ++j) log_nu_[j] = log_or_neg_inf(marg.nu[j]);
    reduce_rows();
  }

  TransportSolution run() {
    TransportSolution sol{cost_, {}, {}, 0.0, 0, std::numeric_limits<double>::infinity(), cfg_.lambda, false};
    for (std::size_t it = 1; it <= cfg_.max_iterations; ++it) {
      for (std::size_t i = 0; i < C_; ++i) log_a_[i] = update(log_mu_[i], lse_rows_[i]);
      reduce_cols();
      for (std::size_t j = 0; j < m_; ++j) log_b_[j] = update(log_nu_[j], lse_cols_[j]);

      reduce_rows();
      Residual res;
      for (std::size_t i = 0; i < C_; ++i)
        res.rows = std::max(res.rows, std::abs(std::exp(log_a_[i] + lse_rows_[i]) - marg_.mu[i]));
      for (std::size_t j = 0; j < m_; ++j)
        res.cols = std::max(res.cols, std::abs(std::exp(log_b_[j] + lse_cols_[j]) - marg_.nu[j]));

      sol.iterations = it;
      sol.marginal_residual = res.max();
      if (sol.marginal_residual <= cfg_.tolerance) {
        sol.converged = true;
        break;
      }
    }
    sol.plan = DenseMatrix(C_, m_);
    for (std::size_t i = 0; i < C_; ++i)
      for (std::size_t j = 0; j < m_; ++j) sol.plan(i, j) = std::exp(log_a_[i] + logK_(i, j) + log_b_[j]);
    return sol;
  }

 private:
  // log of the scaling factor; zero-mass atoms stay at -inf.
  static double update(double log_mass, double lse) {
    if (log_mass == kNegInf) return kNegInf;
    return log_mass - lse;
  }

  static double log_sum_exp(std::span<const double> v) {
    double hi = kNegInf;
    for (double x : v) hi = std::max(hi, x);
    if (hi == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - hi);
    return hi + std::log(acc);
  }

  // lse_rows_[i] = log sum_j exp(logK_ij + log_b_j)
  void reduce_rows() {
    for (std::size_t i = 0; i < C_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) scratch_[j] = logK_(i, j) + log_b_[j];
      lse_rows_[i] = log_sum_exp({scratch_.data(), m_});
    }
  }

  // lse_cols_[j] = log sum_i exp(logK_ij + log_a_i)
  void reduce_cols() {
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < C_; ++i) scratch_[i] = logK_(i, j) + log_a_[i];
      lse_cols_[j] = log_sum_exp({scratch_.data(), C_});
    }
  }

  const CostMatrix& cost_;
  const Marginals& marg_;
  const SolverConfig& cfg_;
  std::size_t C_, m_;
  DenseMatrix logK_;
  std::vector<double> log_mu_, log_nu_, log_a_, log_b_, lse_rows_, lse_cols_, scratch_;
};

}  // namespace

CostMatrix::CostMatrix(DenseMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0) {
    throw Error(ErrorKind::EmptyInput, "cost matrix must be non-empty");
  }
  for (double v : entries_.data()) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "cost entries must be finite and nonnegative");
    }
  }
}

CostMatrix CostMatrix::scaled(double s) const {
  DenseMatrix out = entries_;
  for (double& v : out.data()) v *= s;
  return CostMatrix(std::move(out));
}

CostMatrix euclidean_cost(const FeatureMatrix& sources, const FeatureMatrix& targets) {
  if (sources.cols() != targets.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "source dimension " + std::to_string(sources.cols()) +
                                                  " vs target dimension " + std::to_string(targets.cols()));
  }
  DenseMatrix E(sources.rows(), targets.rows());
  for (std::size_t i = 0; i < sources.rows(); ++i) {
    auto a = sources.row(i);
    for (std::size_t j = 0; j < targets.rows(); ++j) {
      auto b = targets.row(j);
      double sq = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
      }
      E(i, j) = std::sqrt(sq);
    }
  }
  return CostMatrix(std::move(E));
}

CostMatrix euclidean_cost(const PrototypeSet& prototypes, const FeatureMatrix& test) {
  return euclidean_cost(prototypes.vectors(), test);
}

Marginals Marginals::uniform_targets(std::span<const double> mu, std::size_t m) {
  return Marginals{{mu.begin(), mu.end()}, std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

TransportSolution sinkhorn(const CostMatrix& cost, const Marginals& marginals, const SolverConfig& config) {
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
    throw Error(ErrorKind::InvalidArgument, "lambda must be positive and finite");
  }
  if (!(config.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (config.max_iterations == 0) throw Error(ErrorKind::InvalidArgument, "max_iterations must be positive");
  if (marginals.mu.size() != cost.rows() || marginals.nu.size() != cost.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "marginals of length " + std::to_string(marginals.mu.size()) + "/" +
                    std::to_string(marginals.nu.size()) + " for a " + std::to_string(cost.rows()) + "x" +
                    std::to_string(cost.cols()) + " cost matrix");
  }
  check_probability_vector(marginals.mu, "mu");
  check_probability_vector(marginals.nu, "nu");

  TransportSolution sol = config.stabilization == Stabilization::Plain
                              ? PlainSolver(cost, marginals, config).run()
                              : LogDomainSolver(cost, marginals, config).run();

  sol.per_sample_cost = decompose_cost(sol);
  double total = 0.0;
  for (std::size_t i = 0; i < cost.rows(); ++i)
    for (std::size_t j = 0; j < cost.cols(); ++j) total += cost(i, j) * sol.plan(i, j);
  sol.total_cost = total;
  return sol;
}

std::vector<double> decompose_cost(const TransportSolution& solution) {
  const auto& E = solution.cost;
  std::vector<double> T(E.cols(), 0.0);
  for (std::size_t j = 0; j < E.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < E.rows(); ++i) acc += E(i, j) * solution.plan(i, j);
    T[j] = acc;
  }
  return T;
}

double relative_lambda(const CostMatrix& cost, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorKind::InvalidArgument, "relative lambda factor must be positive");
  }
  std::vector<double> v(cost.entries().data().begin(), cost.entries().data().end());
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  double median = *mid;
  if (n % 2 == 0) {
    const double lower = *std::max_element(v.begin(), mid);
    median = 0.5 * (lower + median);
  }
  if (median > 0.0) return factor * median;
  const double largest = *std::max_element(v.begin(), v.end());
  return largest > 0.0 ? factor * largest : factor;
}

}  // namespace pot
