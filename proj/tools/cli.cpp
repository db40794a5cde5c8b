#include "cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pot/errors.hpp"

namespace pot::cli {
namespace {

void add_prototype_source(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--train-features", cfg.train_features, "Training embeddings (.potf binary or .csv)");
  cmd->add_option("--train-labels", cfg.train_labels, "Training labels, one integer per line");
  cmd->add_option("--num-classes", cfg.num_classes, "Number of classes (default: max label + 1)");
  cmd->add_option("--weights", cfg.weights, "Classifier weight matrix, d x C on disk");
  cmd->add_flag("--transpose", cfg.transpose, "The --weights file is stored C x d");
  cmd->add_option("--prototypes", cfg.prototypes, "Prototype file written by `pot prototypes`");
  cmd->add_flag("--normalize", cfg.normalize, "L2-normalize prototypes and test features");
  cmd->add_flag("--csv-header", cfg.csv_header, "Skip one header line in CSV inputs");
}

void add_scoring(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--test-id", cfg.test_id, "In-distribution test embeddings");
  cmd->add_option("--test-ood", cfg.test_ood, "Out-of-distribution test embeddings");
  auto* fixed = cmd->add_option("--lambda", cfg.lambda, "Fixed entropic regularization coefficient");
  auto* rel = cmd->add_option("--lambda-relative", cfg.lambda_relative,
                              "Lambda as a multiple of the median ground cost per batch")
                  ->capture_default_str();
  fixed->excludes(rel);
  cmd->add_option("--omega", cfg.omega, "Extrapolation coefficient for virtual outliers (> 1)")->capture_default_str();
  cmd->add_option("--batch-size", cfg.batch_size, "Test batch size")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Seed for the random batch division")->capture_default_str();
  cmd->add_option("--stabilization", cfg.stabilization, "plain or log")->capture_default_str();
  cmd->add_option("--tolerance", cfg.tolerance, "Sinkhorn marginal tolerance")->capture_default_str();
  cmd->add_option("--max-iters", cfg.max_iters, "Sinkhorn iteration cap")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Batches scored concurrently")->capture_default_str();
}

void add_output(CLI::App* cmd, RunConfig& cfg, const std::string& formats) {
  cmd->add_option("--out", cfg.out, "Output path (default: stdout)");
  if (!formats.empty()) cmd->add_option("--format", cfg.format, "Report format: " + formats);
}

spdlog::level::level_enum log_level() {
  const char* env = std::getenv("POT_LOG");
  if (env == nullptr || *env == '\0') return spdlog::level::warn;
  return spdlog::level::from_str(env);
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Io: return kExitIo;
    case ErrorCategory::Solver: return kExitSolver;
    case ErrorCategory::Validation: return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Prototype-based optimal transport OOD scoring", "pot"};
  app.require_subcommand(1);

  auto* protos = app.add_subcommand("prototypes", "Build class prototypes from training data or weights");
  add_prototype_source(protos, cfg);
  add_output(protos, cfg, "");

  auto* score = app.add_subcommand("score", "Score test embeddings with the contrastive transport cost");
  add_prototype_source(score, cfg);
  add_scoring(score, cfg);
  add_output(score, cfg, "csv");

  auto* eval = app.add_subcommand("eval", "AUROC / FPR95 for OT scores, logit baselines or precomputed scores");
  add_prototype_source(eval, cfg);
  add_scoring(eval, cfg);
  eval->add_option("--scores-id", cfg.scores_id, "Precomputed ID scores, one per line");
  eval->add_option("--scores-ood", cfg.scores_ood, "Precomputed OOD scores, one per line");
  eval->add_option("--orientation", cfg.orientation, "higher_is_ood or higher_is_id (precomputed scores)")
      ->capture_default_str();
  eval->add_option("--logits-id", cfg.logits_id, "ID logits for a baseline");
  eval->add_option("--logits-ood", cfg.logits_ood, "OOD logits for a baseline");
  eval->add_option("--baseline", cfg.baseline, "msp or energy")->capture_default_str();
  add_output(eval, cfg, "json, csv");

  auto* sweep = app.add_subcommand("sweep", "One-at-a-time ablation over lambda, omega and batch size");
  add_prototype_source(sweep, cfg);
  add_scoring(sweep, cfg);
  sweep->add_option("--sweep-lambda", cfg.sweep_lambda, "Fixed lambda values")->delimiter(',');
  sweep->add_option("--sweep-omega", cfg.sweep_omega, "Omega values")->delimiter(',');
  sweep->add_option("--sweep-batch-size", cfg.sweep_batch_size, "Batch sizes")->delimiter(',');
  sweep->add_option("--seeds", cfg.seeds, "Seeds to average over (default: --seed)")->delimiter(',');
  add_output(sweep, cfg, "csv, json");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic Gaussian-mixture benchmark");
  synth->add_option("--spec", cfg.spec, "JSON synth spec");
  add_output(synth, cfg, "");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  spdlog::logger log("pot", sink);
  log.set_pattern("[%l] %v");
  log.set_level(log_level());

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  const Context ctx{cfg, out, log};
  try {
    if (cfg.subcommand == "prototypes") cmd_prototypes(ctx);
    else if (cfg.subcommand == "score") cmd_score(ctx);
    else if (cfg.subcommand == "eval") cmd_eval(ctx);
    else if (cfg.subcommand == "sweep") cmd_sweep(ctx);
    else if (cfg.subcommand == "synth") cmd_synth(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: IoFailure: " << e.what() << '\n';
    return kExitIo;
  }
  log.flush();
  return kExitOk;
}

}  // namespace pot::cli
