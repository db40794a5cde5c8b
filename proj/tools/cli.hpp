#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pot::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitSolver = 4;

struct RunConfig {
  std::string subcommand;

  // Prototype source: exactly one of training data, classifier weights, or a
  // file written by `pot prototypes`.
  std::optional<std::filesystem::path> train_features;
  std::optional<std::filesystem::path> train_labels;
  std::optional<std::size_t> num_classes;
  std::optional<std::filesystem::path> weights;
  bool transpose = false;
  std::optional<std::filesystem::path> prototypes;

  std::optional<std::filesystem::path> test_id;
  std::optional<std::filesystem::path> test_ood;

  std::optional<double> lambda;
  double lambda_relative = 0.5;
  double omega = 2.0;
  std::size_t batch_size = 512;
  std::uint64_t seed = 0;
  std::string stabilization = "log";
  double tolerance = 1e-8;
  std::size_t max_iters = 10000;
  std::size_t threads = 1;
  bool normalize = false;
  bool csv_header = false;

  std::optional<std::filesystem::path> out;
  std::string format;

  // eval on precomputed scores or logits
  std::optional<std::filesystem::path> scores_id;
  std::optional<std::filesystem::path> scores_ood;
  std::string orientation = "higher_is_ood";
  std::optional<std::filesystem::path> logits_id;
  std::optional<std::filesystem::path> logits_ood;
  std::string baseline = "msp";

  // sweep
  std::vector<double> sweep_lambda;
  std::vector<double> sweep_omega;
  std::vector<std::size_t> sweep_batch_size;
  std::vector<std::uint64_t> seeds;

  // synth
  std::optional<std::filesystem::path> spec;
};

// Parses argv-style arguments (without the program name), runs the
// subcommand and returns the exit code. Reports go to --out, or to `out`
// when no --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pot::cli
