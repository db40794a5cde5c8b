#include "reports.hpp"

#include <charconv>
#include <system_error>

#include "pot/errors.hpp"

namespace pot::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string scores_csv(const StreamScores& s) {
  std::string out = "sample_index,score,T,T_star,batch_index\n";
  for (std::size_t j = 0; j < s.scores.size(); ++j) {
    out += std::to_string(j);
    out += ',';
    out += format_double(s.scores[j]);
    out += ',';
    out += format_double(s.t_id[j]);
    out += ',';
    out += format_double(s.t_out[j]);
    out += ',';
    out += std::to_string(s.batch_index[j]);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "parameter,value,auroc,fpr95\n";
  for (const auto& r : rows) {
    out += r.parameter + ',' + format_double(r.value) + ',' + format_double(r.auroc) + ',' +
           format_double(r.fpr95) + '\n';
  }
  return out;
}

json sweep_json(const std::vector<SweepRow>& rows, const json& config) {
  json j;
  j["config"] = config;
  j["rows"] = json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"parameter", r.parameter}, {"value", r.value}, {"auroc", r.auroc}, {"fpr95", r.fpr95}});
  }
  return j;
}

json eval_json(const EvalReport& r, const json& config) {
  return json{{"auroc", r.auroc},   {"fpr95", r.fpr95}, {"threshold", r.threshold_at_tpr95},
              {"n_id", r.n_id},     {"n_ood", r.n_ood}, {"config", config}};
}

std::string eval_csv(const EvalReport& r) {
  return "auroc,fpr95,threshold,n_id,n_ood\n" + format_double(r.auroc) + ',' + format_double(r.fpr95) + ',' +
         format_double(r.threshold_at_tpr95) + ',' + std::to_string(r.n_id) + ',' + std::to_string(r.n_ood) + '\n';
}

json prototype_sidecar(const PrototypeSet& set, bool normalized) {
  return json{{"num_classes", set.num_classes()},
              {"dim", set.dim()},
              {"masses", set.masses()},
              {"source", set.source() == PrototypeSource::FromData ? "from_data" : "from_weights"},
              {"normalized", normalized}};
}

SynthSpec synth_spec_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::InvalidSpec, "synth spec must be a JSON object");
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    const std::string preset = j.value("preset", std::string("far"));
    SynthSpec s;
    if (preset == "far") {
      s = SynthSpec::far_ood(seed);
    } else if (preset == "near") {
      s = SynthSpec::near_ood(seed);
    } else {
      throw Error(ErrorKind::InvalidSpec, "unknown preset '" + preset + "'");
    }
    s.num_classes = j.value("num_classes", s.num_classes);
    s.dim = j.value("dim", s.dim);
    s.radius = j.value("radius", s.radius);
    s.sigma = j.value("sigma", s.sigma);
    s.train_per_class = j.value("train_per_class", s.train_per_class);
    s.test_id_count = j.value("test_id_count", s.test_id_count);
    if (j.contains("ood_clusters")) {
      s.ood_clusters.clear();
      for (const auto& c : j.at("ood_clusters")) {
        OodCluster q;
        q.offset = c.value("offset", q.offset);
        q.sigma = c.value("sigma", s.sigma);
        q.count = c.value("count", q.count);
        s.ood_clusters.push_back(q);
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, e.what());
  }
}

json synth_spec_to_json(const SynthSpec& s) {
  json clusters = json::array();
  for (const auto& q : s.ood_clusters) clusters.push_back({{"offset", q.offset}, {"sigma", q.sigma}, {"count", q.count}});
  return json{{"num_classes", s.num_classes}, {"dim", s.dim},
              {"radius", s.radius},           {"sigma", s.sigma},
              {"train_per_class", s.train_per_class},
              {"test_id_count", s.test_id_count},
              {"ood_clusters", clusters},     {"seed", s.seed}};
}

}  // namespace pot::cli
