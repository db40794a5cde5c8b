#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pot/metrics.hpp"
#include "pot/prototypes.hpp"
#include "pot/scorer.hpp"
#include "pot/synth.hpp"

namespace pot::cli {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// Columns: sample_index,score,T,T_star,batch_index
std::string scores_csv(const StreamScores& scores);

struct SweepRow {
  std::string parameter;
  double value = 0.0;
  double auroc = 0.0;
  double fpr95 = 0.0;
};

// Columns: parameter,value,auroc,fpr95
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows, const nlohmann::json& config);

// Keys: auroc, fpr95, threshold, n_id, n_ood, config
nlohmann::json eval_json(const EvalReport& report, const nlohmann::json& config);
// Header row of the same keys (minus config), then one value row.
std::string eval_csv(const EvalReport& report);

// Sidecar written next to a prototype file.
nlohmann::json prototype_sidecar(const PrototypeSet& set, bool normalized);

// Every field is optional. "preset": "far" | "near" selects the starting
// defaults before the explicit fields are applied.
SynthSpec synth_spec_from_json(const nlohmann::json& j);
nlohmann::json synth_spec_to_json(const SynthSpec& spec);

}  // namespace pot::cli
