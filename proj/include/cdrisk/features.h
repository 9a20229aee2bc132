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

#ifndef CDRISK_FEATURES_H_
#define CDRISK_FEATURES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdrisk/comm_graph.h"
#include "cdrisk/dataset.h"
#include "cdrisk/home_inference.h"
#include "cdrisk/registry.h"
#include "cdrisk/time_bucket.h"
#include "cdrisk/types.h"
#include "json.hpp"

namespace cdrisk {

struct PeriodSplit {
  std::vector<CallRecord> t0;
  std::vector<CallRecord> t1;
  std::size_t dropped = 0;  // outside both windows
};

// Half-open windows: a record at t0.start is in T0, one at t1.end is dropped.
PeriodSplit split_periods(std::span<const CallRecord> records, const StudyWindow& window);

// Per-client antenna usage counts.
struct UserActivity {
  std::map<AntennaId, std::uint64_t> all;
  std::map<AntennaId, std::uint64_t> weeknight;
};

// Keyed by record `caller`.
std::unordered_map<UserId, UserActivity> index_activity(std::span<const CallRecord> records);

// Antennas by descending event count, ties by ascending id, at most k.
std::vector<AntennaId> top_antennas(const std::map<AntennaId, std::uint64_t>& counts,
                                    std::size_t k = 10);
std::vector<AntennaId> top_antennas(const UserId& user, std::span<const CallRecord> records,
                                    std::size_t k = 10,
                                    std::optional<TimeBucket> bucket = std::nullopt);

// Largest pairwise great-circle distance over the set, i.e. the geodesic
// diameter of its hull; 0 for fewer than two antennas.
double mobility_diameter_km(std::span<const Antenna> antennas);

inline constexpr std::size_t kTopK = 10;
inline constexpr std::size_t kEdgeAggregateCount = 36;

enum class NeighborGroup : std::uint8_t { kAll = 0, kEndemic = 1, kNonEndemic = 2 };

// Index of one edge aggregate: group x direction x bucket x {calls, duration}.
constexpr std::size_t edge_aggregate_index(NeighborGroup group, Direction direction,
                                           TimeBucket bucket, bool duration) {
  return static_cast<std::size_t>(group) * 12 + static_cast<std::size_t>(direction) * 6 +
         static_cast<std::size_t>(bucket) * 2 + (duration ? 1 : 0);
}

struct UserFeatures {
  UserId user;
  std::vector<AntennaId> top_antennas_all;
  std::vector<AntennaId> top_antennas_weeknight;
  bool endemic_flag = false;  // home in the zone
  bool exposed_flag = false;  // a top-10 antenna (either list) in the zone
  double mobility_diameter_all_km = 0.0;
  double mobility_diameter_weeknight_km = 0.0;
  std::uint64_t degree = 0;
  std::uint64_t endemic_neighbor_count = 0;
  bool vulnerable_flag = false;  // endemic_neighbor_count > 0
  // Directions are relative to `user`. Neighbors without a home count as
  // non-endemic.
  std::array<double, kEdgeAggregateCount> edge_aggregates{};
};

// Everything feature extraction needs about one analysis period.
struct FeatureContext {
  const std::unordered_map<UserId, UserActivity>* activity;
  const CommGraph* graph;
  const HomeAssignment* homes;
  const EndemicZone* zone;
  const AntennaRegistry* registry;
};

// nullopt when `user` has no records in the period.
std::optional<UserFeatures> build_features(const UserId& user, const FeatureContext& ctx);

// Fixed column order of the numeric vector:
//   endemic_flag, exposed_flag, vulnerable_flag,
//   mobility_diameter_all_km, mobility_diameter_weeknight_km,
//   degree, endemic_neighbor_count,
//   top_all_endemic_0..9, top_weeknight_endemic_0..9 (1 if the i-th top
//   antenna is in the zone, 0 if not or absent),
//   edge_<all|endemic|nonendemic>_<in|out>_<weekday|weeknight|weekend>_<calls|duration_s>.
const std::vector<std::string>& feature_columns();
std::vector<double> to_vector(const UserFeatures& features, const EndemicZone& zone);

// Columns holding non-negative counts or indicators, i.e. every column except
// the two diameters. These feed the naive Bayes baseline.
std::vector<std::size_t> count_feature_mask(std::span<const std::string> columns);

struct MigrationLabel {
  UserId user;
  bool lived_in_endemic_t0 = false;
};

// One label per client with T0 activity: its T0 home is a zone member.
std::vector<MigrationLabel> build_labels(std::span<const CallRecord> t0_records,
                                         const EndemicZone& zone);

struct DatasetBuildReport {
  std::size_t records_t0 = 0;
  std::size_t records_t1 = 0;
  std::size_t records_dropped = 0;
  std::size_t t1_clients = 0;
  std::size_t labeled_users = 0;
  std::size_t rows = 0;
  std::size_t excluded_without_label = 0;     // T1 clients absent from T0
  std::size_t excluded_without_features = 0;  // labeled users absent from T1
  std::size_t positives = 0;

  nlohmann::ordered_json to_json() const;
};

struct MigrationDataset {
  Dataset dataset;
  DatasetBuildReport report;
};

// Features from T1, labels from T0, joined on user id (rows sorted by id).
MigrationDataset build_migration_dataset(std::span<const CallRecord> records,
                                         const StudyWindow& window,
                                         const EndemicZone& zone,
                                         const AntennaRegistry& registry);

}  // namespace cdrisk

#endif  // CDRISK_FEATURES_H_
