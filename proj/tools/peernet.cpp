// peernet: reproducible batch front end over the peernet library.
//
// Subcommands: analyze, predict, simulate, generate. Every run writes its
// outputs plus a manifest.json into --out; identical flags and seed yield
// byte-identical files.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "peernet/diffusion.hpp"
#include "peernet/graph.hpp"
#include "peernet/ingest.hpp"
#include "peernet/manifest.hpp"
#include "peernet/predict.hpp"
#include "peernet/trend.hpp"
#include "peernet/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t consumed = 0;
      values.push_back(std::stod(item, &consumed));
      if (consumed != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error(flag + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) {
    throw std::runtime_error(flag + ": empty list");
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& text,
                                const std::string& flag) {
  std::vector<int> values;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t consumed = 0;
      values.push_back(std::stoi(item, &consumed));
      if (consumed != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error(flag + ": '" + item + "' is not an integer");
    }
  }
  if (values.empty()) {
    throw std::runtime_error(flag + ": empty list");
  }
  return values;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

json trend_to_json(const peernet::TrendResult& trend) {
  return {{"slope", trend.slope},
          {"intercept", trend.intercept},
          {"p_value", trend.p_value},
          {"stderr", trend.stderr_slope}};
}

struct CommonFlags {
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string format;  // "", "json" or "csv"

  bool want_json() const { return format.empty() || format == "json"; }
  bool want_csv() const { return format.empty() || format == "csv"; }
};

void add_common_flags(CLI::App* cmd, CommonFlags* common, bool with_format) {
  cmd->add_option("--out", common->out_dir, "Output directory")->required();
  cmd->add_option("--seed", common->seed, "Base seed for all randomness");
  if (with_format) {
    cmd->add_option("--format", common->format,
                    "Restrict report output to one format (default: both)")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

// One community's input series plus bookkeeping carried into reports.
struct NamedSeries {
  std::string community_id;
  peernet::CommunitySeries series;
  std::vector<peernet::Imputation> imputations;
};

// Loads communities from either the CSV event pair or per-community series
// JSON files. Exactly one route must be supplied.
struct InputFlags {
  std::string comments_path;
  std::string ratings_path;
  std::vector<std::string> series_paths;
};

void add_input_flags(CLI::App* cmd, InputFlags* input) {
  cmd->add_option("--comments", input->comments_path,
                  "Comment events CSV (with --ratings)");
  cmd->add_option("--ratings", input->ratings_path,
                  "Rating events CSV (with --comments)");
  cmd->add_option("--series", input->series_paths,
                  "Community series JSON file (repeatable; alternative to "
                  "the CSV pair)");
}

std::string series_id_from_path(const fs::path& path) {
  std::string stem = path.stem().string();
  constexpr std::string_view kPrefix = "series_";
  if (stem.rfind(kPrefix, 0) == 0 && stem.size() > kPrefix.size()) {
    return stem.substr(kPrefix.size());
  }
  return stem;
}

std::vector<NamedSeries> load_communities(const InputFlags& input,
                                          peernet::MissingPolicy policy,
                                          peernet::RunManifest* manifest) {
  const bool csv_route = !input.comments_path.empty() ||
                         !input.ratings_path.empty();
  const bool series_route = !input.series_paths.empty();
  if (csv_route == series_route) {
    throw std::runtime_error(
        "exactly one input route required: --comments with --ratings, or "
        "--series");
  }

  std::vector<NamedSeries> communities;
  if (csv_route) {
    if (input.comments_path.empty() || input.ratings_path.empty()) {
      throw std::runtime_error("--comments and --ratings must be given together");
    }
    manifest->input_digests.emplace_back(
        input.comments_path, peernet::sha256_file(input.comments_path));
    manifest->input_digests.emplace_back(
        input.ratings_path, peernet::sha256_file(input.ratings_path));
    const peernet::ParsedEvents events =
        peernet::parse_events_files(input.comments_path, input.ratings_path);
    for (const std::string& id : peernet::community_ids(events)) {
      peernet::AssembledSeries assembled =
          peernet::assemble_series(events.comments, events.ratings, id, policy);
      communities.push_back(
          {id, std::move(assembled.series), std::move(assembled.imputations)});
    }
  } else {
    for (const std::string& path : input.series_paths) {
      manifest->input_digests.emplace_back(path, peernet::sha256_file(path));
      std::ifstream in(path);
      if (!in) {
        throw std::runtime_error("cannot open series file: " + path);
      }
      json doc;
      try {
        in >> doc;
      } catch (const json::exception& e) {
        throw std::runtime_error(path + ": invalid JSON (" + e.what() + ")");
      }
      communities.push_back(
          {series_id_from_path(path), peernet::series_from_json(doc), {}});
    }
  }
  if (communities.empty()) {
    throw std::runtime_error("no communities found in the input");
  }
  return communities;
}

void finish_run(const CommonFlags& common, peernet::RunManifest manifest) {
  peernet::write_manifest(common.out_dir, manifest);
}

// ---------------------------------------------------------------------------
// analyze

struct CommunityAnalysis {
  std::string community_id;
  std::vector<double> total_variation;
  std::optional<std::vector<double>> normalized_tv;
  std::string normalization_error;
  std::vector<double> mean_rating;
  std::vector<peernet::Imputation> imputations;
};

int run_analyze(const CommonFlags& common, const InputFlags& input) {
  peernet::RunManifest manifest;
  manifest.command = "analyze";
  manifest.tool_version = peernet::kVersion;
  manifest.seed = common.seed;
  manifest.config = {{"format", common.format.empty() ? "both" : common.format}};

  const std::vector<NamedSeries> communities =
      load_communities(input, peernet::MissingPolicy::community_mean, &manifest);

  std::vector<CommunityAnalysis> analyses;
  for (const NamedSeries& entry : communities) {
    if (entry.series.prompt_count() < 2) {
      throw std::runtime_error("community '" + entry.community_id +
                               "': need >= 2 prompts, found " +
                               std::to_string(entry.series.prompt_count()));
    }
    CommunityAnalysis analysis;
    analysis.community_id = entry.community_id;
    analysis.imputations = entry.imputations;
    for (const auto& prompt : entry.series.prompts) {
      const peernet::LaplacianMatrix laplacian =
          peernet::build_laplacian(prompt.graph);
      analysis.total_variation.push_back(
          peernet::total_variation(laplacian, prompt.ratings));
      analysis.mean_rating.push_back(peernet::average_rating(prompt.ratings));
    }
    try {
      analysis.normalized_tv =
          peernet::normalize_series(analysis.total_variation);
    } catch (const std::invalid_argument& e) {
      analysis.normalization_error = e.what();
    }
    analyses.push_back(std::move(analysis));
  }

  json report;
  report["communities"] = json::array();
  for (const CommunityAnalysis& analysis : analyses) {
    json trends;
    trends["total_variation"] =
        trend_to_json(peernet::linear_trend(analysis.total_variation));
    trends["normalized_tv"] =
        analysis.normalized_tv
            ? trend_to_json(peernet::linear_trend(*analysis.normalized_tv))
            : json(nullptr);
    trends["mean_rating"] =
        trend_to_json(peernet::linear_trend(analysis.mean_rating));

    json entry = {{"community_id", analysis.community_id},
                  {"prompts", analysis.total_variation.size()},
                  {"total_variation", analysis.total_variation},
                  {"normalized_tv", analysis.normalized_tv
                                        ? json(*analysis.normalized_tv)
                                        : json(nullptr)},
                  {"mean_rating", analysis.mean_rating},
                  {"trends", std::move(trends)}};
    if (!analysis.normalization_error.empty()) {
      entry["normalization_error"] = analysis.normalization_error;
    }
    json imputations = json::array();
    for (const peernet::Imputation& imputation : analysis.imputations) {
      imputations.push_back({{"participant_id", imputation.participant_id},
                             {"prompt", imputation.prompt},
                             {"value", imputation.value}});
    }
    entry["imputations"] = std::move(imputations);
    report["communities"].push_back(std::move(entry));
  }

  // Group averages need aligned prompt counts; report the obstacle instead
  // of failing the whole run when they differ.
  const std::size_t prompts = analyses.front().total_variation.size();
  bool aligned = true;
  for (const CommunityAnalysis& analysis : analyses) {
    aligned = aligned && analysis.total_variation.size() == prompts;
  }
  std::optional<std::vector<double>> group_tv;
  std::optional<std::vector<double>> group_normalized;
  std::optional<std::vector<double>> group_rating;
  if (!aligned) {
    report["group_average"] = nullptr;
    report["group_average_error"] =
        "communities have different prompt counts; no group average";
  } else {
    std::vector<std::vector<double>> tv_series, rating_series;
    std::vector<std::vector<double>> normalized_series;
    bool all_normalized = true;
    for (const CommunityAnalysis& analysis : analyses) {
      tv_series.push_back(analysis.total_variation);
      rating_series.push_back(analysis.mean_rating);
      if (analysis.normalized_tv) {
        normalized_series.push_back(*analysis.normalized_tv);
      } else {
        all_normalized = false;
      }
    }
    auto elementwise_mean = [&](const std::vector<std::vector<double>>& rows) {
      std::vector<double> mean(prompts, 0.0);
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < prompts; ++i) mean[i] += row[i];
      }
      for (double& v : mean) v /= static_cast<double>(rows.size());
      return mean;
    };
    group_tv = elementwise_mean(tv_series);
    group_rating = elementwise_mean(rating_series);
    if (all_normalized) group_normalized = elementwise_mean(normalized_series);

    json group = {{"prompts", prompts},
                  {"total_variation", *group_tv},
                  {"normalized_tv", group_normalized ? json(*group_normalized)
                                                     : json(nullptr)},
                  {"mean_rating", *group_rating}};
    json trends;
    trends["total_variation"] =
        trend_to_json(peernet::group_average_trend(tv_series));
    trends["normalized_tv"] =
        all_normalized
            ? trend_to_json(peernet::group_average_trend(normalized_series))
            : json(nullptr);
    trends["mean_rating"] =
        trend_to_json(peernet::group_average_trend(rating_series));
    group["trends"] = std::move(trends);
    report["group_average"] = std::move(group);
  }

  fs::create_directories(common.out_dir);
  const fs::path out_dir(common.out_dir);
  if (common.want_json()) {
    write_text_file(out_dir / "analysis.json", report.dump(2) + "\n");
    manifest.outputs.push_back("analysis.json");
  }
  if (common.want_csv()) {
    std::ostringstream csv;
    csv << "community_id,prompt,total_variation,normalized_tv,mean_rating\n";
    auto write_rows = [&](const std::string& id, const std::vector<double>& tv,
                          const std::optional<std::vector<double>>& ntv,
                          const std::vector<double>& rating) {
      for (std::size_t p = 0; p < tv.size(); ++p) {
        csv << id << ',' << (p + 1) << ',' << fmt_double(tv[p]) << ',';
        if (ntv) csv << fmt_double((*ntv)[p]);
        csv << ',' << fmt_double(rating[p]) << '\n';
      }
    };
    for (const CommunityAnalysis& analysis : analyses) {
      write_rows(analysis.community_id, analysis.total_variation,
                 analysis.normalized_tv, analysis.mean_rating);
    }
    if (group_tv) {
      write_rows("group_average", *group_tv, group_normalized, *group_rating);
    }
    write_text_file(out_dir / "analysis.csv", csv.str());
    manifest.outputs.push_back("analysis.csv");
  }
  finish_run(common, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// predict

int run_predict(const CommonFlags& common, const InputFlags& input,
                const std::string& features_name,
                const std::string& lambda_grid_text,
                const std::string& mu_grid_text,
                const std::string& missing_name) {
  const peernet::FeatureSet features =
      peernet::feature_set_from_name(features_name);
  const std::vector<double> lambda_grid =
      parse_double_list(lambda_grid_text, "--lambda-grid");
  const std::vector<double> mu_grid = parse_double_list(mu_grid_text, "--mu-grid");
  const peernet::MissingPolicy policy =
      missing_name == "error" ? peernet::MissingPolicy::error
                              : peernet::MissingPolicy::community_mean;

  peernet::RunManifest manifest;
  manifest.command = "predict";
  manifest.tool_version = peernet::kVersion;
  manifest.seed = common.seed;
  manifest.config = {{"features", features_name},
                     {"lambda_grid", lambda_grid_text},
                     {"mu_grid", mu_grid_text},
                     {"missing", missing_name},
                     {"format", common.format.empty() ? "both" : common.format}};

  const std::vector<NamedSeries> communities =
      load_communities(input, policy, &manifest);

  json report;
  report["communities"] = json::array();
  std::ostringstream csv;
  csv << "community_id,features,lambda,mu,consensus_error,baseline_error\n";
  for (const NamedSeries& entry : communities) {
    if (entry.series.prompt_count() < 3) {
      throw std::runtime_error("community '" + entry.community_id +
                               "': target prompt absent (need >= 3 prompts, "
                               "found " +
                               std::to_string(entry.series.prompt_count()) +
                               ")");
    }
    peernet::ModelComparison comparison;
    try {
      const peernet::PredictionTask task =
          peernet::PredictionTask::for_series(entry.series);
      comparison =
          peernet::compare_models(task, features, lambda_grid, mu_grid);
    } catch (const std::exception& e) {
      throw std::runtime_error("community '" + entry.community_id +
                               "': " + e.what());
    }
    report["communities"].push_back(
        {{"community_id", entry.community_id},
         {"features", peernet::feature_set_name(comparison.features)},
         {"lambda", comparison.selected.lambda},
         {"mu", comparison.selected.mu},
         {"consensus_error", comparison.consensus_error},
         {"baseline_error", comparison.baseline_error},
         {"fold_errors", comparison.fold_errors}});
    csv << entry.community_id << ','
        << peernet::feature_set_name(comparison.features) << ','
        << fmt_double(comparison.selected.lambda) << ','
        << fmt_double(comparison.selected.mu) << ','
        << fmt_double(comparison.consensus_error) << ','
        << fmt_double(comparison.baseline_error) << '\n';
  }

  fs::create_directories(common.out_dir);
  const fs::path out_dir(common.out_dir);
  if (common.want_json()) {
    write_text_file(out_dir / "predictions.json", report.dump(2) + "\n");
    manifest.outputs.push_back("predictions.json");
  }
  if (common.want_csv()) {
    write_text_file(out_dir / "predictions.csv", csv.str());
    manifest.outputs.push_back("predictions.csv");
  }
  finish_run(common, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

std::vector<std::pair<std::string, std::string>> diffusion_config_snapshot(
    const peernet::DiffusionConfig& config) {
  return {{"n", std::to_string(config.node_count)},
          {"edge_prob", fmt_double(config.edge_prob)},
          {"c", fmt_double(config.diffusion_constant)},
          {"drift_mean", fmt_double(config.drift_mean)},
          {"drift_std", fmt_double(config.drift_std)},
          {"rmin", fmt_double(config.rating_min)},
          {"rmax", fmt_double(config.rating_max)},
          {"horizon", std::to_string(config.horizon)},
          {"realizations", std::to_string(config.realizations)}};
}

void add_diffusion_flags(CLI::App* cmd, peernet::DiffusionConfig* config,
                         bool with_protocol_flags) {
  cmd->add_option("--edge-prob", config->edge_prob,
                  "Edge probability of the per-prompt random graphs");
  cmd->add_option("--c", config->diffusion_constant,
                  "Diffusion constant, must stay below 1/d_max");
  cmd->add_option("--drift-mean", config->drift_mean, "Drift mean");
  cmd->add_option("--drift-std", config->drift_std,
                  "Drift standard deviation");
  cmd->add_option("--rmin", config->rating_min, "Rating lower bound");
  cmd->add_option("--rmax", config->rating_max, "Rating upper bound");
  if (with_protocol_flags) {
    cmd->add_option("--n", config->node_count, "Participants per realization");
    cmd->add_option("--horizon", config->horizon, "Prompts per realization");
    cmd->add_option("--realizations", config->realizations,
                    "Monte Carlo realizations");
  }
}

int run_simulate(const CommonFlags& common, peernet::DiffusionConfig config,
                 int trace_realizations) {
  config.seed = common.seed;

  peernet::RunManifest manifest;
  manifest.command = "simulate";
  manifest.tool_version = peernet::kVersion;
  manifest.seed = common.seed;
  manifest.config = diffusion_config_snapshot(config);
  manifest.config.emplace_back("traces", std::to_string(trace_realizations));
  manifest.config.emplace_back("format",
                               common.format.empty() ? "both" : common.format);

  const peernet::TrajectoryStats stats =
      peernet::simulate(config, trace_realizations);

  fs::create_directories(common.out_dir);
  const fs::path out_dir(common.out_dir);
  if (common.want_csv()) {
    std::ostringstream csv;
    csv << "prompt,mean_tv,mean_normalized_tv,mean_rating\n";
    for (std::size_t p = 0; p < stats.mean_tv.size(); ++p) {
      csv << (p + 1) << ',' << fmt_double(stats.mean_tv[p]) << ','
          << fmt_double(stats.mean_normalized_tv[p]) << ','
          << fmt_double(stats.mean_rating[p]) << '\n';
    }
    write_text_file(out_dir / "trajectory.csv", csv.str());
    manifest.outputs.push_back("trajectory.csv");
  }
  if (common.want_json()) {
    json config_json;
    for (const auto& [key, value] : diffusion_config_snapshot(config)) {
      config_json[key] = value;
    }
    const json doc = {{"config", std::move(config_json)},
                      {"seed", config.seed},
                      {"mean_tv", stats.mean_tv},
                      {"mean_normalized_tv", stats.mean_normalized_tv},
                      {"mean_rating", stats.mean_rating}};
    write_text_file(out_dir / "trajectory.json", doc.dump(2) + "\n");
    manifest.outputs.push_back("trajectory.json");
  }
  if (!stats.traces.empty()) {
    std::ostringstream csv;
    csv << "realization,prompt,total_variation,normalized_tv,mean_rating\n";
    for (std::size_t k = 0; k < stats.traces.size(); ++k) {
      const peernet::RealizationTrace& trace = stats.traces[k];
      for (std::size_t p = 0; p < trace.total_variation.size(); ++p) {
        csv << k << ',' << (p + 1) << ','
            << fmt_double(trace.total_variation[p]) << ','
            << fmt_double(trace.normalized_tv[p]) << ','
            << fmt_double(trace.mean_rating[p]) << '\n';
      }
    }
    write_text_file(out_dir / "traces.csv", csv.str());
    manifest.outputs.push_back("traces.csv");
  }
  finish_run(common, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// generate

int run_generate(const CommonFlags& common, peernet::DiffusionConfig config,
                 const std::string& sizes_text, int prompts) {
  const std::vector<int> sizes = parse_int_list(sizes_text, "--sizes");
  config.seed = common.seed;

  peernet::RunManifest manifest;
  manifest.command = "generate";
  manifest.tool_version = peernet::kVersion;
  manifest.seed = common.seed;
  manifest.config = {{"sizes", sizes_text},
                     {"prompts", std::to_string(prompts)},
                     {"edge_prob", fmt_double(config.edge_prob)},
                     {"c", fmt_double(config.diffusion_constant)},
                     {"drift_mean", fmt_double(config.drift_mean)},
                     {"drift_std", fmt_double(config.drift_std)},
                     {"rmin", fmt_double(config.rating_min)},
                     {"rmax", fmt_double(config.rating_max)}};

  const std::vector<peernet::CommunitySeries> dataset =
      peernet::generate_synthetic_dataset(config, sizes, prompts, common.seed);

  fs::create_directories(common.out_dir);
  const fs::path out_dir(common.out_dir);
  std::vector<peernet::CommentEvent> all_comments;
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    const std::string id = "g" + std::to_string(k + 1);
    const std::vector<peernet::CommentEvent> events =
        peernet::emit_comment_events(dataset[k], id);
    all_comments.insert(all_comments.end(), events.begin(), events.end());

    const std::string name = "series_" + id + ".json";
    write_text_file(out_dir / name,
                    peernet::series_to_json(dataset[k]).dump(2) + "\n");
    manifest.outputs.push_back(name);
  }
  std::ostringstream comments_csv;
  peernet::write_comments_csv(comments_csv, all_comments);
  write_text_file(out_dir / "comments.csv", comments_csv.str());
  manifest.outputs.push_back("comments.csv");

  finish_run(common, std::move(manifest));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer-rating network analysis, prediction and simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", peernet::kVersion);

  CommonFlags analyze_common, predict_common, simulate_common, generate_common;
  InputFlags analyze_input, predict_input;

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Per-community rating smoothness and trend report");
  add_common_flags(analyze_cmd, &analyze_common, true);
  add_input_flags(analyze_cmd, &analyze_input);

  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "Held-out prompt prediction, consensus vs baseline");
  add_common_flags(predict_cmd, &predict_common, true);
  add_input_flags(predict_cmd, &predict_input);
  std::string features = "linear";
  std::string lambda_grid = "0,1e-4,1e-3,1e-2,1e-1,1";
  std::string mu_grid = "0,1e-4,1e-3,1e-2,1e-1,1";
  std::string missing = "error";
  predict_cmd->add_option("--features", features, "Regression basis")
      ->check(CLI::IsMember({"linear", "nonlinear"}));
  predict_cmd->add_option("--lambda-grid", lambda_grid,
                          "Comma list of smoothness weights");
  predict_cmd->add_option("--mu-grid", mu_grid,
                          "Comma list of shrinkage weights (nonlinear only)");
  predict_cmd->add_option("--missing", missing,
                          "Policy for participants without ratings in a prompt")
      ->check(CLI::IsMember({"error", "community-mean"}));

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo rating diffusion trajectories");
  add_common_flags(simulate_cmd, &simulate_common, true);
  peernet::DiffusionConfig simulate_config;
  int traces = 0;
  add_diffusion_flags(simulate_cmd, &simulate_config, true);
  simulate_cmd->add_option(
      "--traces", traces, "Also write the first N per-realization traces");

  CLI::App* generate_cmd = app.add_subcommand(
      "generate", "Synthetic multi-community dataset from the diffusion model");
  add_common_flags(generate_cmd, &generate_common, false);
  peernet::DiffusionConfig generate_config;
  std::string sizes;
  int prompts = 0;
  add_diffusion_flags(generate_cmd, &generate_config, false);
  generate_cmd->add_option("--sizes", sizes, "Comma list of community sizes")
      ->required();
  generate_cmd->add_option("--prompts", prompts, "Prompts per community")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) return run_analyze(analyze_common, analyze_input);
    if (*predict_cmd) {
      return run_predict(predict_common, predict_input, features, lambda_grid,
                         mu_grid, missing);
    }
    if (*simulate_cmd) {
      return run_simulate(simulate_common, simulate_config, traces);
    }
    if (*generate_cmd) {
      return run_generate(generate_common, generate_config, sizes, prompts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
