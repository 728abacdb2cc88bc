#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "disinfo/classify.hpp"
#include "disinfo/config.hpp"
#include "disinfo/errors.hpp"
#include "disinfo/pipeline.hpp"
#include "disinfo/synth.hpp"

namespace {

using nlohmann::json;

// Options shared by every pipeline stage subcommand. Flags override the
// config file, which overrides the shipped defaults.
struct StageOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  std::int64_t window_len = 0;
  std::int64_t stride = 0;
  std::int64_t delta_t_sync = 0;
  int c_min = 0;
  double theta_edge = 0;
  double tau_link = 0;
  double z_event = 0;
  double j_dup = 0;
  double lambda = 0;
  double cosine_threshold = 0;

  CLI::Option* config_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* window_opt = nullptr;
  CLI::Option* stride_opt = nullptr;
  CLI::Option* delta_t_opt = nullptr;
  CLI::Option* c_min_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* z_opt = nullptr;
  CLI::Option* j_dup_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* cosine_opt = nullptr;
};

void add_stage_options(CLI::App* cmd, StageOptions& o) {
  o.config_opt = cmd->add_option("-c,--config", o.config_path, "pipeline config file (JSON)");
  o.out_opt = cmd->add_option("-o,--out", o.out_dir, "directory for stage artifacts");
  o.seed_opt = cmd->add_option("--seed", o.seed, "hash seed for duplicate detection");
  o.threads_opt = cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  o.window_opt = cmd->add_option("--window", o.window_len, "window length in seconds");
  o.stride_opt = cmd->add_option("--stride", o.stride, "window stride in seconds");
  o.theta_opt = cmd->add_option("--theta-edge", o.theta_edge, "co-occurrence edge weight threshold");
  o.c_min_opt = cmd->add_option("--c-min", o.c_min, "minimum co-mention count for an edge");
  o.tau_opt = cmd->add_option("--tau-link", o.tau_link, "cross-window chaining threshold");
  o.z_opt = cmd->add_option("--z-event", o.z_event, "burst z-score threshold");
  o.j_dup_opt = cmd->add_option("--j-dup", o.j_dup, "near-duplicate Jaccard threshold");
  o.delta_t_opt =
      cmd->add_option("--delta-t-sync", o.delta_t_sync, "synchrony matching window in seconds");
  o.lambda_opt = cmd->add_option("--lambda", o.lambda, "agenda rate saturation constant");
  o.cosine_opt = cmd->add_option("--cosine-threshold", o.cosine_threshold,
                                 "actor grouping similarity threshold");
}

// Paths inside a config file are relative to the file, not to the cwd.
void resolve_relative_paths(disinfo::config::PipelineConfig& cfg,
                            const std::filesystem::path& base) {
  const auto resolve = [&base](std::string& p) {
    if (p.empty()) return;
    std::filesystem::path fp(p);
    if (fp.is_relative()) p = (base / fp).lexically_normal().string();
  };
  for (auto& input : cfg.inputs) {
    resolve(input.path);
    resolve(input.adapter);
  }
  resolve(cfg.low_credibility_path);
  resolve(cfg.entity_dictionary_path);
  resolve(cfg.lexicon_path);
  resolve(cfg.shortener_map_path);
  resolve(cfg.articles_path);
}

disinfo::config::PipelineConfig build_config(const StageOptions& o) {
  disinfo::config::PipelineConfig cfg;
  if (o.config_opt->count()) {
    cfg.apply_file(o.config_path);
    resolve_relative_paths(cfg, std::filesystem::path(o.config_path).parent_path());
  }
  if (o.out_opt->count()) cfg.out_dir = o.out_dir;
  if (o.seed_opt->count()) cfg.seed = o.seed;
  if (o.threads_opt->count()) cfg.threads = o.threads;
  if (o.window_opt->count()) cfg.window_len = o.window_len;
  if (o.stride_opt->count()) cfg.stride = o.stride;
  if (o.theta_opt->count()) cfg.theta_edge = o.theta_edge;
  if (o.c_min_opt->count()) cfg.c_min = o.c_min;
  if (o.tau_opt->count()) cfg.tau_link = o.tau_link;
  if (o.z_opt->count()) cfg.z_event = o.z_event;
  if (o.j_dup_opt->count()) cfg.j_dup = o.j_dup;
  if (o.delta_t_opt->count()) cfg.delta_t_sync = o.delta_t_sync;
  if (o.lambda_opt->count()) cfg.lambda = o.lambda;
  if (o.cosine_opt->count()) cfg.cosine_threshold = o.cosine_threshold;
  cfg.validate();
  return cfg;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw disinfo::IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw disinfo::IoError(path + ": " + e.what());
  }
  return j;
}

// Narrative-level labels from a per-post ground truth: a narrative counts as
// orchestrated when at least half of its posts belong to a campaign.
int run_calibrate(const std::string& truth_path, const std::string& report_path,
                  const disinfo::classify::CalibrateParams& params) {
  std::ifstream in(truth_path);
  if (!in) throw disinfo::IoError("cannot open " + truth_path);
  std::set<std::string> campaign_posts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw disinfo::IoError(truth_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (j.value("type", "") == "post" && j.value("label", "") == "campaign")
      campaign_posts.insert(j.at("post_id").get<std::string>());
  }

  const json report = load_json_file(report_path);
  std::vector<std::array<double, 3>> scores;
  std::vector<int> labels;
  for (const auto& jn : report.at("narratives")) {
    const auto& s = jn.at("scores");
    scores.push_back({s.at("deception").get<double>(), s.at("coordination").get<double>(),
                      s.at("agenda").get<double>()});
    int campaign = 0;
    const auto& ids = jn.at("post_ids");
    for (const auto& id : ids)
      if (campaign_posts.count(id.get<std::string>())) ++campaign;
    labels.push_back(ids.empty() ? 0 : (2 * campaign >= static_cast<int>(ids.size()) ? 1 : 0));
  }

  const auto result = disinfo::classify::calibrate(scores, labels, params);
  json out = {{"weights",
               {{"w_deception", result.weights.w_deception},
                {"w_coordination", result.weights.w_coordination},
                {"w_agenda", result.weights.w_agenda},
                {"bias", result.weights.bias}}},
              {"training_accuracy", result.training_accuracy},
              {"final_loss", result.final_loss},
              {"projected", result.projected},
              {"narratives", static_cast<int>(labels.size())}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disinformation narrative detection pipeline"};
  app.require_subcommand(0, 1);

  StageOptions ingest_o, narratives_o, classify_o, attribute_o, impact_o, all_o;
  CLI::App* cmd_ingest = app.add_subcommand("ingest", "normalize and merge the configured inputs");
  CLI::App* cmd_narratives =
      app.add_subcommand("narratives", "windowed co-occurrence clusters chained over time");
  CLI::App* cmd_classify =
      app.add_subcommand("classify", "score narratives and write the report");
  CLI::App* cmd_attribute = app.add_subcommand("attribute", "add actor groups to the report");
  CLI::App* cmd_impact = app.add_subcommand("impact", "add impact metrics to the report");
  CLI::App* cmd_all = app.add_subcommand("run-all", "all pipeline stages in order");
  add_stage_options(cmd_ingest, ingest_o);
  add_stage_options(cmd_narratives, narratives_o);
  add_stage_options(cmd_classify, classify_o);
  add_stage_options(cmd_attribute, attribute_o);
  add_stage_options(cmd_impact, impact_o);
  add_stage_options(cmd_all, all_o);

  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  std::string scenario_path;
  std::string synth_out = "synth_out";
  std::uint64_t synth_seed = 0;
  CLI::Option* scenario_opt =
      cmd_synth->add_option("--scenario", scenario_path, "scenario config file (JSON)");
  cmd_synth->add_option("-o,--out", synth_out, "directory for the generated corpus");
  CLI::Option* synth_seed_opt =
      cmd_synth->add_option("--seed", synth_seed, "generator seed (required, nonzero)");

  CLI::App* cmd_calibrate =
      app.add_subcommand("calibrate", "fit fusion weights from a report and ground truth");
  std::string truth_path;
  std::string report_path;
  disinfo::classify::CalibrateParams cal_params;
  cmd_calibrate->add_option("--truth", truth_path, "ground_truth.ndjson from synth")->required();
  cmd_calibrate->add_option("--report", report_path, "report.json from classify")->required();
  cmd_calibrate->add_option("--learning-rate", cal_params.learning_rate, "gradient step size");
  cmd_calibrate->add_option("--iterations", cal_params.iterations, "gradient descent steps");
  cmd_calibrate->add_option("--init-seed", cal_params.seed, "weight initialization seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    if (cmd_synth->parsed()) {
      disinfo::synth::ScenarioConfig scfg;
      if (scenario_opt->count())
        scfg = disinfo::synth::ScenarioConfig::from_json(load_json_file(scenario_path));
      if (synth_seed_opt->count()) scfg.seed = synth_seed;
      const auto result = disinfo::synth::generate(scfg, synth_out);
      json summary = {{"out_dir", synth_out},
                      {"platforms", result.platform_names},
                      {"total_posts", result.total_posts},
                      {"campaign_posts", result.campaign_posts},
                      {"ground_truth", result.ground_truth_path},
                      {"pipeline_config", result.pipeline_config_path}};
      std::cout << summary.dump(2) << "\n";
      return 0;
    }
    if (cmd_calibrate->parsed()) return run_calibrate(truth_path, report_path, cal_params);

    if (cmd_ingest->parsed()) disinfo::pipeline::run_ingest(build_config(ingest_o));
    if (cmd_narratives->parsed()) disinfo::pipeline::run_narratives(build_config(narratives_o));
    if (cmd_classify->parsed()) disinfo::pipeline::run_classify(build_config(classify_o));
    if (cmd_attribute->parsed()) disinfo::pipeline::run_attribute(build_config(attribute_o));
    if (cmd_impact->parsed()) disinfo::pipeline::run_impact(build_config(impact_o));
    if (cmd_all->parsed()) disinfo::pipeline::run_all(build_config(all_o));
  } catch (const disinfo::PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
