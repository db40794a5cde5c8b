#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pot/pot.hpp"
#include "reports.hpp"

namespace pot::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

CsvOptions csv_options(const RunConfig& cfg) { return CsvOptions{cfg.csv_header}; }

FeatureMatrix load_matrix(const RunConfig& cfg, const fs::path& path) {
  return load_features(path, format_from_extension(path), csv_options(cfg));
}

void emit(const Context& ctx, const std::string& text) {
  if (ctx.config.out) {
    write_text_file(*ctx.config.out, text);
  } else {
    ctx.out << text;
  }
}

PrototypeSet load_prototype_file(const fs::path& path) {
  FeatureMatrix vectors = load_features(path, format_from_extension(path));
  const fs::path sidecar = path.string() + ".json";
  json meta;
  try {
    meta = json::parse(read_text_file(sidecar));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedHeader, sidecar.string() + ": " + e.what());
  }
  try {
    auto masses = meta.at("masses").get<std::vector<double>>();
    const auto source = meta.value("source", std::string("from_data")) == "from_weights"
                            ? PrototypeSource::FromWeights
                            : PrototypeSource::FromData;
    return PrototypeSet(std::move(vectors), std::move(masses), source);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedHeader, sidecar.string() + ": " + e.what());
  }
}

PrototypeSet load_prototypes(const RunConfig& cfg) {
  const int sources = (cfg.train_features || cfg.train_labels ? 1 : 0) + (cfg.weights ? 1 : 0) +
                      (cfg.prototypes ? 1 : 0);
  if (sources != 1) {
    invalid("exactly one prototype source is required: --train-features/--train-labels, --weights, or --prototypes");
  }
  PrototypeSet set = [&] {
    if (cfg.weights) {
      FeatureMatrix w = load_matrix(cfg, *cfg.weights);
      // On disk the matrix is d x C, or C x d with --transpose.
      return prototypes_from_weights(cfg.transpose ? w.matrix().transposed() : w.matrix());
    }
    if (cfg.prototypes) return load_prototype_file(*cfg.prototypes);
    if (!cfg.train_features || !cfg.train_labels) invalid("--train-features and --train-labels go together");
    FeatureMatrix x = load_matrix(cfg, *cfg.train_features);
    auto y = load_labels(*cfg.train_labels, cfg.num_classes, csv_options(cfg));
    return prototypes_from_data(LabeledDataset(std::move(x), std::move(y), cfg.num_classes));
  }();
  return cfg.normalize ? l2_normalized(set) : set;
}

struct TestData {
  FeatureMatrix features;  // ID rows first, then OOD rows
  std::size_t n_id;
  std::size_t n_ood;
};

TestData load_test(const RunConfig& cfg, bool require_ood) {
  if (!cfg.test_id) invalid("--test-id is required");
  if (require_ood && !cfg.test_ood) invalid("--test-ood is required");
  FeatureMatrix id = load_matrix(cfg, *cfg.test_id);
  const std::size_t n_id = id.rows();
  std::size_t n_ood = 0;
  FeatureMatrix all = [&] {
    if (!cfg.test_ood) return id;
    FeatureMatrix ood = load_matrix(cfg, *cfg.test_ood);
    n_ood = ood.rows();
    return concat_rows(id, ood);
  }();
  if (cfg.normalize) all = l2_normalize_rows(all);
  return {std::move(all), n_id, n_ood};
}

Stabilization parse_stabilization(const std::string& s) {
  if (s == "log" || s == "log_domain") return Stabilization::LogDomain;
  if (s == "plain") return Stabilization::Plain;
  invalid("unknown stabilization '" + s + "' (expected plain or log)");
}

ScoreConfig score_config(const RunConfig& cfg) {
  ScoreConfig sc;
  sc.omega = cfg.omega;
  sc.lambda = cfg.lambda ? LambdaPolicy::fixed(*cfg.lambda) : LambdaPolicy::relative(cfg.lambda_relative);
  sc.max_iterations = cfg.max_iters;
  sc.tolerance = cfg.tolerance;
  sc.stabilization = parse_stabilization(cfg.stabilization);
  return sc;
}

void check_omega(double omega) {
  if (!(omega > 1.0)) throw Error(ErrorKind::OmegaOutOfRange, "omega must be greater than 1, got " + format_double(omega));
}

void check_batch_size(std::size_t batch_size) {
  if (batch_size < 2) {
    throw Error(ErrorKind::BatchTooSmall, "batch size must be at least 2, got " + std::to_string(batch_size));
  }
}

json scoring_json(const RunConfig& cfg, const ScoreConfig& sc, std::size_t batch_size, std::uint64_t seed) {
  json j;
  j["method"] = "pot";
  j["omega"] = sc.omega;
  j["lambda_mode"] = sc.lambda.mode == LambdaPolicy::Mode::Fixed ? "fixed" : "relative";
  j["lambda_value"] = sc.lambda.value;
  j["batch_size"] = batch_size;
  j["seed"] = seed;
  j["stabilization"] = sc.stabilization == Stabilization::Plain ? "plain" : "log_domain";
  j["tolerance"] = sc.tolerance;
  j["max_iters"] = sc.max_iterations;
  j["normalize"] = cfg.normalize;
  return j;
}

void log_batches(const Context& ctx, const StreamScores& s) {
  for (const auto& b : s.batches) {
    ctx.log.debug("batch {}: size {}, lambda {}, iterations {}/{}", b.batch_index, b.batch_size, b.lambda,
                  b.iterations_id, b.iterations_out);
    for (const auto& w : b.warnings) ctx.log.warn("batch {}: {}", b.batch_index, w);
  }
}

EvalReport pot_eval(const Context& ctx, const PrototypeSet& protos, const TestData& test, std::size_t batch_size,
                    std::uint64_t seed, const ScoreConfig& sc) {
  const StreamScores s = score_stream(protos, test.features, batch_size, seed, sc, ctx.config.threads);
  log_batches(ctx, s);
  const std::span<const double> all(s.scores);
  return evaluate(all.first(test.n_id), all.subspan(test.n_id), Orientation::HigherIsOod);
}

std::vector<double> load_score_column(const RunConfig& cfg, const fs::path& path) {
  FeatureMatrix m = load_matrix(cfg, path);
  if (m.cols() != 1) {
    throw Error(ErrorKind::DimensionMismatch, path.string() + " must hold a single column of scores");
  }
  return {m.data().begin(), m.data().end()};
}

Orientation parse_orientation(const std::string& s) {
  if (s == "higher_is_ood") return Orientation::HigherIsOod;
  if (s == "higher_is_id") return Orientation::HigherIsId;
  invalid("unknown orientation '" + s + "' (expected higher_is_ood or higher_is_id)");
}

void emit_eval(const Context& ctx, const EvalReport& report, const json& config) {
  const std::string& fmt = ctx.config.format;
  if (fmt.empty() || fmt == "json") {
    emit(ctx, eval_json(report, config).dump(2) + "\n");
  } else if (fmt == "csv") {
    emit(ctx, eval_csv(report));
  } else {
    invalid("unknown report format '" + fmt + "'");
  }
}

}  // namespace

void cmd_prototypes(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  if (!cfg.out) invalid("--out is required");
  const PrototypeSet set = load_prototypes(cfg);
  save_features(set.vectors(), *cfg.out);
  write_text_file(cfg.out->string() + ".json", prototype_sidecar(set, cfg.normalize).dump(2) + "\n");
  ctx.log.info("wrote {} prototypes of dimension {} to {}", set.num_classes(), set.dim(), cfg.out->string());
}

void cmd_score(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  check_omega(cfg.omega);
  check_batch_size(cfg.batch_size);
  const ScoreConfig sc = score_config(cfg);
  const PrototypeSet protos = load_prototypes(cfg);
  const TestData test = load_test(cfg, false);
  const StreamScores s = score_stream(protos, test.features, cfg.batch_size, cfg.seed, sc, cfg.threads);
  log_batches(ctx, s);
  if (!cfg.format.empty() && cfg.format != "csv") invalid("score output is CSV only");
  emit(ctx, scores_csv(s));
}

void cmd_eval(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  if (cfg.scores_id || cfg.scores_ood) {
    if (!cfg.scores_id || !cfg.scores_ood) invalid("--scores-id and --scores-ood go together");
    const auto id = load_score_column(cfg, *cfg.scores_id);
    const auto ood = load_score_column(cfg, *cfg.scores_ood);
    const Orientation o = parse_orientation(cfg.orientation);
    emit_eval(ctx, evaluate(id, ood, o), json{{"method", "precomputed"}, {"orientation", cfg.orientation}});
    return;
  }
  if (cfg.logits_id || cfg.logits_ood) {
    if (!cfg.logits_id || !cfg.logits_ood) invalid("--logits-id and --logits-ood go together");
    BaselineKind kind;
    if (cfg.baseline == "msp") {
      kind = BaselineKind::Msp;
    } else if (cfg.baseline == "energy") {
      kind = BaselineKind::Energy;
    } else {
      invalid("unknown baseline '" + cfg.baseline + "' (expected msp or energy)");
    }
    const LogitMatrix id{load_matrix(cfg, *cfg.logits_id)};
    const LogitMatrix ood{load_matrix(cfg, *cfg.logits_ood)};
    if (id.values.cols() != ood.values.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "ID and OOD logits have different class counts");
    }
    const auto sid = baseline_scores(id, kind);
    const auto sood = baseline_scores(ood, kind);
    emit_eval(ctx, evaluate(sid, sood, Orientation::HigherIsId),
              json{{"method", cfg.baseline}, {"orientation", "higher_is_id"}});
    return;
  }
  check_omega(cfg.omega);
  check_batch_size(cfg.batch_size);
  const ScoreConfig sc = score_config(cfg);
  const PrototypeSet protos = load_prototypes(cfg);
  const TestData test = load_test(cfg, true);
  const EvalReport report = pot_eval(ctx, protos, test, cfg.batch_size, cfg.seed, sc);
  json config = scoring_json(cfg, sc, cfg.batch_size, cfg.seed);
  config["orientation"] = "higher_is_ood";
  emit_eval(ctx, report, config);
}

void cmd_sweep(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  if (cfg.sweep_lambda.empty() && cfg.sweep_omega.empty() && cfg.sweep_batch_size.empty()) {
    invalid("give at least one of --sweep-lambda, --sweep-omega, --sweep-batch-size");
  }
  const ScoreConfig base = score_config(cfg);
  const PrototypeSet protos = load_prototypes(cfg);
  const TestData test = load_test(cfg, true);
  const std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{cfg.seed} : cfg.seeds;

  std::vector<SweepRow> rows;
  auto run_point = [&](const std::string& name, double value, const ScoreConfig& sc, std::size_t batch_size) {
    check_omega(sc.omega);
    check_batch_size(batch_size);
    SweepRow row{name, value, 0.0, 0.0};
    for (std::uint64_t seed : seeds) {
      const EvalReport r = pot_eval(ctx, protos, test, batch_size, seed, sc);
      row.auroc += r.auroc;
      row.fpr95 += r.fpr95;
    }
    row.auroc /= static_cast<double>(seeds.size());
    row.fpr95 /= static_cast<double>(seeds.size());
    ctx.log.info("{} = {}: auroc {} fpr95 {}", name, value, row.auroc, row.fpr95);
    rows.push_back(row);
  };

  for (double lambda : cfg.sweep_lambda) {
    ScoreConfig sc = base;
    sc.lambda = LambdaPolicy::fixed(lambda);
    run_point("lambda", lambda, sc, cfg.batch_size);
  }
  for (double omega : cfg.sweep_omega) {
    ScoreConfig sc = base;
    sc.omega = omega;
    run_point("omega", omega, sc, cfg.batch_size);
  }
  for (std::size_t bs : cfg.sweep_batch_size) run_point("batch_size", static_cast<double>(bs), base, bs);

  const std::string& fmt = cfg.format;
  if (fmt.empty() || fmt == "csv") {
    emit(ctx, sweep_csv(rows));
  } else if (fmt == "json") {
    json config = scoring_json(cfg, base, cfg.batch_size, cfg.seed);
    config["seeds"] = seeds;
    emit(ctx, sweep_json(rows, config).dump(2) + "\n");
  } else {
    invalid("unknown report format '" + fmt + "'");
  }
}

void cmd_synth(const Context& ctx) {
  const RunConfig& cfg = ctx.config;
  if (!cfg.spec) invalid("--spec is required");
  if (!cfg.out) invalid("--out (output directory) is required");
  json j;
  try {
    j = json::parse(read_text_file(*cfg.spec));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, cfg.spec->string() + ": " + e.what());
  }
  const SynthSpec spec = synth_spec_from_json(j);
  const SynthData data = generate(spec);

  const fs::path dir = *cfg.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

  save_features(data.train.features(), dir / "train_features.potf");
  save_labels(data.train.labels(), dir / "train_labels.txt");
  save_features(data.test_id, dir / "test_id.potf");
  save_labels(data.test_id_labels, dir / "test_id_labels.txt");
  save_features(data.test_ood, dir / "test_ood.potf");
  write_text_file(dir / "spec.json", synth_spec_to_json(spec).dump(2) + "\n");
  ctx.log.info("wrote synthetic dataset to {}", dir.string());
}

}  // namespace pot::cli
