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

#ifndef CDRISK_PIPELINE_H_
#define CDRISK_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "cdrisk/ingest.h"
#include "cdrisk/registry.h"
#include "cdrisk/risk_map.h"
#include "cdrisk/synth.h"
#include "cdrisk/types.h"
#include "json.hpp"

// File-level stages behind the command line. Each stage reads its declared
// inputs, writes fixed-name artifacts under an output directory and returns a
// JSON summary. `run_pipeline` is literally the composition of the stages, so
// its artifacts are byte-identical to running the stages one by one.
namespace cdrisk::pipeline {

inline constexpr char kIngestReportFile[] = "ingest_report.json";
inline constexpr char kEdgesFile[] = "edges.csv";
inline constexpr char kHomesFile[] = "homes.csv";
inline constexpr char kRiskMapFile[] = "riskmap.geojson";
inline constexpr char kStatsFile[] = "antenna_stats.csv";
inline constexpr char kDatasetFile[] = "dataset.csv";
inline constexpr char kDatasetManifestFile[] = "dataset.manifest.json";
inline constexpr char kModelFile[] = "model.json";
inline constexpr char kMetricsFile[] = "metrics.json";
inline constexpr char kReportFile[] = "report.json";

struct InputPaths {
  std::string records;
  std::string antennas;
  std::string zone;
  std::string zone_name = "endemic";
};

// Parsed inputs plus their SHA-256 digests.
struct Inputs {
  AntennaRegistry registry;
  std::optional<EndemicZone> zone;  // absent when no zone path was given
  IngestResult ingest;
  nlohmann::ordered_json digests = nlohmann::ordered_json::object();
};

// Throws IoError for unreadable files and ValidationError for bad content.
Inputs load_inputs(const InputPaths& paths, bool need_zone = true);

nlohmann::ordered_json window_json(const StudyWindow& window);

struct TrainConfig {
  double lambda = 0.01;
  std::uint64_t seed = 42;
  double train_fraction = 0.7;
  bool tune = false;
  double tolerance = 1e-6;
  int max_iters = 10000;

  nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json run_synth(const SynthConfig& config, const StudyWindow& window,
                                 const std::string& out_dir);
nlohmann::ordered_json run_ingest(const InputPaths& paths, const std::string& out_dir);
nlohmann::ordered_json run_graph(const InputPaths& paths, const std::string& out_dir);
nlohmann::ordered_json run_homes(const InputPaths& paths, std::optional<TimeRange> window,
                                 const std::string& out_dir);
nlohmann::ordered_json run_riskmap(const InputPaths& paths, const RiskMapParameters& params,
                                   const std::string& out_dir);
nlohmann::ordered_json run_features(const InputPaths& paths, const StudyWindow& window,
                                    const std::string& out_dir);
nlohmann::ordered_json run_train(const std::string& dataset_path, const TrainConfig& config,
                                 const std::string& out_dir);
nlohmann::ordered_json run_evaluate(const std::string& dataset_path,
                                    const std::string& model_path, const std::string& out_dir);
nlohmann::ordered_json run_pipeline(const InputPaths& paths, const RiskMapParameters& params,
                                    const StudyWindow& window, const TrainConfig& train,
                                    const std::string& out_dir);

}  // namespace cdrisk::pipeline

#endif  // CDRISK_PIPELINE_H_
