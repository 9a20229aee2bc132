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

#include "cdrisk/features.h"

#include <algorithm>

#include <fmt/format.h>

#include "cdrisk/geo.h"

namespace cdrisk {

PeriodSplit split_periods(std::span<const CallRecord> records, const StudyWindow& window) {
  PeriodSplit out;
  for (const CallRecord& r : records) {
    if (window.t0().contains(r.timestamp)) {
      out.t0.push_back(r);
    } else if (window.t1().contains(r.timestamp)) {
      out.t1.push_back(r);
    } else {
      ++out.dropped;
    }
  }
  return out;
}

std::unordered_map<UserId, UserActivity> index_activity(std::span<const CallRecord> records) {
  std::unordered_map<UserId, UserActivity> out;
  for (const CallRecord& r : records) {
    UserActivity& a = out[r.caller];
    ++a.all[r.antenna];
    if (classify_time(r.timestamp) == TimeBucket::kWeeknight) ++a.weeknight[r.antenna];
  }
  return out;
}

std::vector<AntennaId> top_antennas(const std::map<AntennaId, std::uint64_t>& counts,
                                    std::size_t k) {
  std::vector<std::pair<AntennaId, std::uint64_t>> ranked(counts.begin(), counts.end());
  // Stable on an id-ordered input keeps ascending ids among equal counts.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<AntennaId> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) out.push_back(ranked[i].first);
  return out;
}

std::vector<AntennaId> top_antennas(const UserId& user, std::span<const CallRecord> records,
                                    std::size_t k, std::optional<TimeBucket> bucket) {
  std::map<AntennaId, std::uint64_t> counts;
  for (const CallRecord& r : records) {
    if (r.caller != user) continue;
    if (bucket && classify_time(r.timestamp) != *bucket) continue;
    ++counts[r.antenna];
  }
  return top_antennas(counts, k);
}

double mobility_diameter_km(std::span<const Antenna> antennas) {
  double best = 0.0;
  for (std::size_t i = 0; i < antennas.size(); ++i) {
    for (std::size_t j = i + 1; j < antennas.size(); ++j) {
      best = std::max(best, haversine_km(antennas[i], antennas[j]));
    }
  }
  return best;
}

namespace {

double diameter_of(const std::map<AntennaId, std::uint64_t>& counts,
                   const AntennaRegistry& registry) {
  std::vector<Antenna> used;
  used.reserve(counts.size());
  for (const auto& [id, n] : counts) used.push_back(registry.at(id));
  return mobility_diameter_km(used);
}

bool any_in_zone(const std::vector<AntennaId>& ids, const EndemicZone& zone) {
  return std::any_of(ids.begin(), ids.end(),
                     [&](const AntennaId& id) { return zone.contains(id); });
}

}  // namespace

std::optional<UserFeatures> build_features(const UserId& user, const FeatureContext& ctx) {
  auto activity_it = ctx.activity->find(user);
  if (activity_it == ctx.activity->end()) return std::nullopt;
  const UserActivity& activity = activity_it->second;

  UserFeatures f;
  f.user = user;
  f.top_antennas_all = top_antennas(activity.all, kTopK);
  f.top_antennas_weeknight = top_antennas(activity.weeknight, kTopK);
  const HomeEntry* home = ctx.homes->find(user);
  f.endemic_flag = home != nullptr && ctx.zone->contains(home->antenna);
  f.exposed_flag = any_in_zone(f.top_antennas_all, *ctx.zone) ||
                   any_in_zone(f.top_antennas_weeknight, *ctx.zone);
  f.mobility_diameter_all_km = diameter_of(activity.all, *ctx.registry);
  f.mobility_diameter_weeknight_km = diameter_of(activity.weeknight, *ctx.registry);

  for (const UserId& v : ctx.graph->neighbors(user)) {
    ++f.degree;
    const HomeEntry* v_home = ctx.homes->find(v);
    const bool endemic_neighbor = v_home != nullptr && ctx.zone->contains(v_home->antenna);
    if (endemic_neighbor) ++f.endemic_neighbor_count;
    const EdgeStats stats = *ctx.graph->stats_from(user, v);
    const NeighborGroup group =
        endemic_neighbor ? NeighborGroup::kEndemic : NeighborGroup::kNonEndemic;
    for (Direction d : {Direction::kIncoming, Direction::kOutgoing}) {
      for (TimeBucket b : kAllBuckets) {
        const CallCounter& c = stats.at(d, b);
        for (NeighborGroup g : {NeighborGroup::kAll, group}) {
          f.edge_aggregates[edge_aggregate_index(g, d, b, false)] +=
              static_cast<double>(c.calls);
          f.edge_aggregates[edge_aggregate_index(g, d, b, true)] +=
              static_cast<double>(c.duration_s);
        }
      }
    }
  }
  f.vulnerable_flag = f.endemic_neighbor_count > 0;
  return f;
}

const std::vector<std::string>& feature_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> c = {"endemic_flag",
                                  "exposed_flag",
                                  "vulnerable_flag",
                                  "mobility_diameter_all_km",
                                  "mobility_diameter_weeknight_km",
                                  "degree",
                                  "endemic_neighbor_count"};
    for (std::size_t i = 0; i < kTopK; ++i) c.push_back(fmt::format("top_all_endemic_{}", i));
    for (std::size_t i = 0; i < kTopK; ++i) {
      c.push_back(fmt::format("top_weeknight_endemic_{}", i));
    }
    for (const char* group : {"all", "endemic", "nonendemic"}) {
      for (const char* dir : {"in", "out"}) {
        for (TimeBucket b : kAllBuckets) {
          for (const char* metric : {"calls", "duration_s"}) {
            c.push_back(fmt::format("edge_{}_{}_{}_{}", group, dir, to_string(b), metric));
          }
        }
      }
    }
    return c;
  }();
  return columns;
}

std::vector<double> to_vector(const UserFeatures& f, const EndemicZone& zone) {
  std::vector<double> v;
  v.reserve(feature_columns().size());
  v.push_back(f.endemic_flag ? 1.0 : 0.0);
  v.push_back(f.exposed_flag ? 1.0 : 0.0);
  v.push_back(f.vulnerable_flag ? 1.0 : 0.0);
  v.push_back(f.mobility_diameter_all_km);
  v.push_back(f.mobility_diameter_weeknight_km);
  v.push_back(static_cast<double>(f.degree));
  v.push_back(static_cast<double>(f.endemic_neighbor_count));
  for (const auto* list : {&f.top_antennas_all, &f.top_antennas_weeknight}) {
    for (std::size_t i = 0; i < kTopK; ++i) {
      v.push_back(i < list->size() && zone.contains((*list)[i]) ? 1.0 : 0.0);
    }
  }
  v.insert(v.end(), f.edge_aggregates.begin(), f.edge_aggregates.end());
  return v;
}

std::vector<std::size_t> count_feature_mask(std::span<const std::string> columns) {
  std::vector<std::size_t> mask;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (!columns[i].ends_with("_km")) mask.push_back(i);
  }
  return mask;
}

std::vector<MigrationLabel> build_labels(std::span<const CallRecord> t0_records,
                                         const EndemicZone& zone) {
  const HomeAssignment homes = infer_homes(t0_records);
  std::vector<MigrationLabel> labels;
  labels.reserve(homes.size());
  for (const auto& [user, entry] : homes.entries()) {
    labels.push_back(MigrationLabel{user, zone.contains(entry.antenna)});
  }
  return labels;
}

nlohmann::ordered_json DatasetBuildReport::to_json() const {
  nlohmann::ordered_json j;
  j["records_t0"] = records_t0;
  j["records_t1"] = records_t1;
  j["records_dropped"] = records_dropped;
  j["t1_clients"] = t1_clients;
  j["labeled_users"] = labeled_users;
  j["rows"] = rows;
  j["excluded_without_label"] = excluded_without_label;
  j["excluded_without_features"] = excluded_without_features;
  j["positives"] = positives;
  return j;
}

MigrationDataset build_migration_dataset(std::span<const CallRecord> records,
                                         const StudyWindow& window,
                                         const EndemicZone& zone,
                                         const AntennaRegistry& registry) {
  const PeriodSplit periods = split_periods(records, window);
  const CommGraph graph = CommGraph::build(periods.t1);
  const HomeAssignment homes = infer_homes(periods.t1);
  const auto activity = index_activity(periods.t1);
  const FeatureContext ctx{&activity, &graph, &homes, &zone, &registry};

  std::map<UserId, bool> label_of;
  for (const MigrationLabel& l : build_labels(periods.t0, zone)) {
    label_of.emplace(l.user, l.lived_in_endemic_t0);
  }

  MigrationDataset out{Dataset(feature_columns()), {}};
  DatasetBuildReport& report = out.report;
  report.records_t0 = periods.t0.size();
  report.records_t1 = periods.t1.size();
  report.records_dropped = periods.dropped;
  report.t1_clients = homes.size();
  report.labeled_users = label_of.size();

  // T1 clients are exactly the users with T1 homes; walk them in id order.
  for (const auto& [user, entry] : homes.entries()) {
    auto label_it = label_of.find(user);
    if (label_it == label_of.end()) {
      ++report.excluded_without_label;
      continue;
    }
    const auto features = build_features(user, ctx);
    if (!features) {
      ++report.excluded_without_features;
      continue;
    }
    const std::vector<double> row = to_vector(*features, zone);
    out.dataset.add_row(user.str(), row, label_it->second ? 1 : 0);
    if (label_it->second) ++report.positives;
  }
  for (const auto& [user, label] : label_of) {
    if (!homes.contains(user)) ++report.excluded_without_features;
  }
  report.rows = out.dataset.size();
  return out;
}

}  // namespace cdrisk
