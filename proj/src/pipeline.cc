// Copyright 2026 The cdrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdrisk/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cdrisk/comm_graph.h"
#include "cdrisk/dataset.h"
#include "cdrisk/digest.h"
#include "cdrisk/features.h"
#include "cdrisk/home_inference.h"
#include "cdrisk/json_util.h"
#include "cdrisk/logreg.h"
#include "cdrisk/metrics.h"
#include "cdrisk/naive_bayes.h"

namespace cdrisk::pipeline {
namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

void write_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write {}", path));
  out << content;
  out.close();
  if (!out) throw IoError(fmt::format("write failed for {}", path));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open {}", path));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("{}: {}", path, e.what()));
  }
}

nlohmann::ordered_json ingest_summary(const IngestReport& report) {
  nlohmann::ordered_json j;
  j["lines_seen"] = report.lines_seen();
  j["accepted"] = report.accepted();
  j["rejected_total"] = report.rejected_total();
  return j;
}

}  // namespace

Inputs load_inputs(const InputPaths& paths, bool need_zone) {
  Inputs in;
  in.registry = load_registry_file(paths.antennas);
  in.digests["antennas_sha256"] = sha256_file(paths.antennas);
  if (need_zone) {
    in.zone = load_zone_file(paths.zone, paths.zone_name, in.registry);
    in.digests["zone_sha256"] = sha256_file(paths.zone);
  }
  in.ingest = parse_cdr_file(paths.records, in.registry);
  in.digests["records_sha256"] = sha256_file(paths.records);
  return in;
}

nlohmann::ordered_json window_json(const StudyWindow& window) {
  nlohmann::ordered_json j;
  j["t0_start"] = format_timestamp(window.t0().start);
  j["t0_end"] = format_timestamp(window.t0().end);
  j["t1_start"] = format_timestamp(window.t1().start);
  j["t1_end"] = format_timestamp(window.t1().end);
  return j;
}

nlohmann::ordered_json TrainConfig::to_json() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda;
  j["seed"] = seed;
  j["train_fraction"] = train_fraction;
  j["tune"] = tune;
  j["tolerance"] = tolerance;
  j["max_iters"] = max_iters;
  return j;
}

nlohmann::ordered_json run_synth(const SynthConfig& config, const StudyWindow& window,
                                 const std::string& out_dir) {
  const SynthCorpus corpus = generate(config, window);
  write_corpus(corpus, out_dir);
  nlohmann::ordered_json summary;
  summary["stage"] = "synth";
  summary["config"] = config.to_json();
  summary["window"] = window_json(window);
  summary["records"] = corpus.records.size();
  summary["users"] = corpus.truth.users.size();
  summary["migrants"] = corpus.truth.migrant_count();
  summary["artifacts"] = {
      {"cdr.csv", sha256_file(join(out_dir, "cdr.csv"))},
      {"antennas.csv", sha256_file(join(out_dir, "antennas.csv"))},
      {"zone.csv", sha256_file(join(out_dir, "zone.csv"))},
      {"ground_truth.json", sha256_file(join(out_dir, "ground_truth.json"))}};
  return summary;
}

nlohmann::ordered_json run_ingest(const InputPaths& paths, const std::string& out_dir) {
  const Inputs in = load_inputs(paths, /*need_zone=*/false);
  nlohmann::ordered_json doc;
  doc["inputs"] = in.digests;
  doc["report"] = in.ingest.report.to_json();
  write_file(join(out_dir, kIngestReportFile), doc.dump(2) + "\n");
  nlohmann::ordered_json summary;
  summary["stage"] = "ingest";
  summary["ingest"] = ingest_summary(in.ingest.report);
  summary["outputs"] = {kIngestReportFile};
  return summary;
}

nlohmann::ordered_json run_graph(const InputPaths& paths, const std::string& out_dir) {
  const Inputs in = load_inputs(paths, /*need_zone=*/false);
  const CommGraph graph = CommGraph::build(in.ingest.records);
  std::ostringstream out;
  write_edge_list(out, graph);
  write_file(join(out_dir, kEdgesFile), out.str());
  nlohmann::ordered_json summary;
  summary["stage"] = "graph";
  summary["nodes"] = graph.nodes().size();
  summary["clients"] = graph.clients().size();
  summary["edges"] = graph.edge_count();
  summary["outputs"] = {kEdgesFile};
  return summary;
}

nlohmann::ordered_json run_homes(const InputPaths& paths, std::optional<TimeRange> window,
                                 const std::string& out_dir) {
  const Inputs in = load_inputs(paths, /*need_zone=*/false);
  const HomeAssignment homes = infer_homes(in.ingest.records, window);
  std::ostringstream out;
  write_homes_csv(out, homes);
  write_file(join(out_dir, kHomesFile), out.str());
  std::size_t fallback = 0;
  for (const auto& [user, entry] : homes.entries()) {
    if (entry.provenance == HomeProvenance::kFallbackAllCalls) ++fallback;
  }
  nlohmann::ordered_json summary;
  summary["stage"] = "homes";
  summary["users"] = homes.size();
  summary["fallback_all_calls"] = fallback;
  if (window) {
    summary["window"] = {{"start", format_timestamp(window->start)},
                         {"end", format_timestamp(window->end)}};
  }
  summary["outputs"] = {kHomesFile};
  return summary;
}

nlohmann::ordered_json run_riskmap(const InputPaths& paths, const RiskMapParameters& params,
                                   const std::string& out_dir) {
  const Inputs in = load_inputs(paths);
  const auto& records = in.ingest.records;
  const CommGraph graph = CommGraph::build(records);
  const HomeAssignment homes = infer_homes(records);
  const auto residents = residents_of(homes, *in.zone);
  const VulnerableTagging tagging = tag_vulnerable(graph, residents);
  const std::vector<AntennaStats> stats =
      aggregate(homes, graph, records, *in.zone, in.registry,
                AggregateOptions{params.count_zone_residents_as_vulnerable});

  RiskMap map;
  map.stats = filter_map(stats, params.beta, params.min_population);
  map.parameters = params;
  map.zone_name = in.zone->name();
  map.metadata["inputs"] = in.digests;
  map.metadata["ingest"] = ingest_summary(in.ingest.report);
  if (const auto& span = in.ingest.report.time_span()) {
    map.metadata["data_time_span"] = {{"min", format_timestamp(span->start)},
                                      {"max", format_timestamp(span->end)}};
  }
  map.metadata["clients_with_homes"] = homes.size();
  map.metadata["zone_residents"] = residents.size();
  map.metadata["vulnerable_users"] = tagging.vulnerable.size();
  map.metadata["unknown_residents"] = tagging.unknown_residents;
  map.metadata["antennas_total"] = stats.size();
  map.metadata["antennas_kept"] = map.stats.size();

  write_file(join(out_dir, kRiskMapFile), geojson_text(map));
  std::ostringstream csv;
  write_stats_csv(csv, stats);
  write_file(join(out_dir, kStatsFile), csv.str());

  nlohmann::ordered_json summary;
  summary["stage"] = "riskmap";
  summary["beta"] = params.beta;
  summary["min_pop"] = params.min_population;
  summary["antennas_total"] = stats.size();
  summary["antennas_kept"] = map.stats.size();
  summary["outputs"] = {kRiskMapFile, kStatsFile};
  return summary;
}

nlohmann::ordered_json run_features(const InputPaths& paths, const StudyWindow& window,
                                    const std::string& out_dir) {
  const Inputs in = load_inputs(paths);
  const MigrationDataset built =
      build_migration_dataset(in.ingest.records, window, *in.zone, in.registry);
  std::ostringstream csv;
  write_dataset_csv(csv, built.dataset);
  write_file(join(out_dir, kDatasetFile), csv.str());

  nlohmann::ordered_json manifest;
  manifest["schema_version"] = kDatasetSchemaVersion;
  manifest["columns"] = built.dataset.columns();
  manifest["feature_count"] = built.dataset.dims();
  manifest["window"] = window_json(window);
  manifest["zone"] = {{"name", in.zone->name()},
                      {"sha256", in.digests["zone_sha256"]},
                      {"antennas", in.zone->members().size()}};
  manifest["inputs"] = in.digests;
  manifest["build"] = built.report.to_json();
  manifest["dataset_sha256"] = sha256_hex(csv.str());
  write_file(join(out_dir, kDatasetManifestFile), manifest.dump(2) + "\n");

  nlohmann::ordered_json summary;
  summary["stage"] = "features";
  summary["rows"] = built.report.rows;
  summary["positives"] = built.report.positives;
  summary["features"] = built.dataset.dims();
  summary["outputs"] = {kDatasetFile, kDatasetManifestFile};
  return summary;
}

nlohmann::ordered_json run_train(const std::string& dataset_path, const TrainConfig& config,
                                 const std::string& out_dir) {
  const Dataset data = read_dataset_file(dataset_path);
  const std::string dataset_digest = sha256_file(dataset_path);
  const SplitAssignment split =
      stratified_split(data.labels(), config.train_fraction, config.seed);
  const std::vector<std::size_t> train_rows = split.train_rows();

  LogRegOptions options{config.lambda, config.tolerance, config.max_iters};
  LogRegModel model;
  nlohmann::ordered_json tuning = nullptr;
  if (config.tune) {
    const std::vector<double> grid = default_lambda_grid();
    TuningResult tuned = tune_logreg(data, train_rows, grid, config.seed, 0.05, options);
    model = std::move(tuned.model);
    tuning = nlohmann::ordered_json::object();
    tuning["grid"] = grid;
    tuning["validation_fraction"] = 0.05;
    tuning["chosen_lambda"] = tuned.chosen_lambda;
    nlohmann::ordered_json trials = nlohmann::ordered_json::array();
    for (const LambdaTrial& t : tuned.trials) {
      trials.push_back({{"lambda", t.lambda},
                        {"validation_auc", t.validation_auc ? nlohmann::ordered_json(*t.validation_auc)
                                                            : nlohmann::ordered_json(nullptr)},
                        {"validation_loss", t.validation_loss}});
    }
    tuning["trials"] = std::move(trials);
  } else {
    model = train_logreg(data, train_rows, options);
  }
  if (model.convergence.warning()) {
    fmt::print(stderr, "warning: logistic regression stopped with {} after {} iterations\n",
               to_string(model.convergence.termination), model.convergence.iterations);
  }

  nlohmann::ordered_json doc = model.to_json();
  nlohmann::ordered_json training;
  training["dataset_sha256"] = dataset_digest;
  training["config"] = config.to_json();
  training["train_rows"] = train_rows.size();
  training["test_rows"] = data.size() - train_rows.size();
  training["tuning"] = tuning;
  doc["training"] = std::move(training);
  write_file(join(out_dir, kModelFile), doc.dump(2) + "\n");

  nlohmann::ordered_json summary;
  summary["stage"] = "train";
  summary["lambda"] = model.lambda;
  summary["termination"] = to_string(model.convergence.termination);
  summary["iterations"] = model.convergence.iterations;
  summary["outputs"] = {kModelFile};
  return summary;
}

nlohmann::ordered_json run_evaluate(const std::string& dataset_path,
                                    const std::string& model_path, const std::string& out_dir) {
  const Dataset data = read_dataset_file(dataset_path);
  const std::string dataset_digest = sha256_file(dataset_path);
  const nlohmann::json model_doc = read_json_file(model_path);
  const LogRegModel model = LogRegModel::from_json(model_doc);
  if (model.columns != data.columns()) {
    throw ValidationError("model columns do not match the dataset header");
  }
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
  try {
    const auto& training = model_doc.at("training");
    if (training.at("dataset_sha256").get<std::string>() != dataset_digest) {
      throw ValidationError("model was trained on a different dataset file");
    }
    seed = training.at("config").at("seed").get<std::uint64_t>();
    train_fraction = training.at("config").at("train_fraction").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("model JSON lacks training provenance: {}", e.what()));
  }

  const SplitAssignment split = stratified_split(data.labels(), train_fraction, seed);
  const std::vector<std::size_t> train_rows = split.train_rows();
  const std::vector<std::size_t> test_rows = split.test_rows();
  std::vector<int> test_labels;
  for (std::size_t r : test_rows) test_labels.push_back(data.label(r));

  const Metrics logreg_metrics = evaluate_scores(test_labels, model.predict_proba(data, test_rows));
  const MultinomialNB nb =
      train_mnb(data, train_rows, count_feature_mask(data.columns()), 1.0);
  const Metrics nb_metrics = evaluate_scores(test_labels, nb.predict_proba(data, test_rows));

  nlohmann::ordered_json doc;
  doc["dataset_sha256"] = dataset_digest;
  doc["model_sha256"] = sha256_file(model_path);
  doc["split"] = {{"seed", seed},
                  {"train_fraction", train_fraction},
                  {"train_rows", train_rows.size()},
                  {"test_rows", test_rows.size()}};
  doc["logreg"] = logreg_metrics.to_json();
  doc["logreg"]["lambda"] = model.lambda;
  doc["naive_bayes"] = nb_metrics.to_json();
  doc["naive_bayes"]["alpha"] = nb.alpha;
  doc["naive_bayes"]["feature_count"] = nb.columns.size();
  write_file(join(out_dir, kMetricsFile), dump_fixed(doc, 6) + "\n");

  nlohmann::ordered_json summary;
  summary["stage"] = "evaluate";
  summary["logreg"] = {{"auc", doc["logreg"]["auc"]}, {"f1", doc["logreg"]["f1"]}};
  summary["naive_bayes"] = {{"auc", doc["naive_bayes"]["auc"]}, {"f1", doc["naive_bayes"]["f1"]}};
  summary["outputs"] = {kMetricsFile};
  return summary;
}

nlohmann::ordered_json run_pipeline(const InputPaths& paths, const RiskMapParameters& params,
                                    const StudyWindow& window, const TrainConfig& train,
                                    const std::string& out_dir) {
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  stages.push_back(run_ingest(paths, out_dir));
  stages.push_back(run_riskmap(paths, params, out_dir));
  stages.push_back(run_features(paths, window, out_dir));
  const std::string dataset = join(out_dir, kDatasetFile);
  const std::string model = join(out_dir, kModelFile);
  stages.push_back(run_train(dataset, train, out_dir));
  stages.push_back(run_evaluate(dataset, model, out_dir));

  nlohmann::ordered_json report;
  nlohmann::ordered_json parameters;
  parameters["zone_name"] = paths.zone_name;
  parameters["beta"] = params.beta;
  parameters["min_pop"] = params.min_population;
  parameters["color_max"] = params.color_max;
  parameters["radius_k"] = params.radius_k;
  parameters["count_zone_residents_as_vulnerable"] = params.count_zone_residents_as_vulnerable;
  parameters["window"] = window_json(window);
  parameters["train"] = train.to_json();
  report["parameters"] = std::move(parameters);
  report["inputs"] = {{"records_sha256", sha256_file(paths.records)},
                      {"antennas_sha256", sha256_file(paths.antennas)},
                      {"zone_sha256", sha256_file(paths.zone)}};
  report["stages"] = stages;
  nlohmann::ordered_json artifacts;
  for (const char* name : {kIngestReportFile, kRiskMapFile, kStatsFile, kDatasetFile,
                           kDatasetManifestFile, kModelFile, kMetricsFile}) {
    artifacts[name] = sha256_file(join(out_dir, name));
  }
  report["artifacts"] = std::move(artifacts);
  write_file(join(out_dir, kReportFile), dump_fixed(report, 6) + "\n");

  nlohmann::ordered_json summary;
  summary["stage"] = "pipeline";
  summary["metrics"] = stages.back();
  summary["outputs"] = {kIngestReportFile, kRiskMapFile, kStatsFile, kDatasetFile,
                        kDatasetManifestFile, kModelFile, kMetricsFile, kReportFile};
  return summary;
}

}  // namespace cdrisk::pipeline
