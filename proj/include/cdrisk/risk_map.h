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

#ifndef CDRISK_RISK_MAP_H_
#define CDRISK_RISK_MAP_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cdrisk/comm_graph.h"
#include "cdrisk/home_inference.h"
#include "cdrisk/registry.h"
#include "cdrisk/types.h"
#include "json.hpp"

namespace cdrisk {

struct VulnerableTagging {
  std::set<UserId> vulnerable;
  // Residents that are not nodes of the graph; they tag nobody.
  std::size_t unknown_residents = 0;
};

// Union of the graph neighborhoods of every resident. A resident is itself
// tagged only when it neighbors another resident.
VulnerableTagging tag_vulnerable(const CommGraph& graph,
                                 const std::set<UserId>& residents);

// Per-antenna indicators.
struct AntennaStats {
  Antenna antenna;
  std::uint64_t residents = 0;         // N_a
  std::uint64_t vulnerable = 0;        // V_a
  std::uint64_t calls_out = 0;         // C_a
  std::uint64_t calls_to_endemic = 0;  // VC_a

  // V_a / N_a, 0 when the antenna has no residents.
  double frac_vulnerable() const;

  friend bool operator==(const AntennaStats&, const AntennaStats&) = default;
};

// Partial outgoing-call counts (C_a, VC_a) over a shard of records. Shards
// merge by addition.
class OutgoingTally {
 public:
  struct Counts {
    std::uint64_t calls_out = 0;
    std::uint64_t calls_to_endemic = 0;
    friend bool operator==(const Counts&, const Counts&) = default;
  };

  void add(const CallRecord& record, const std::set<UserId>& residents);
  OutgoingTally& merge(const OutgoingTally& other);
  const std::map<AntennaId, Counts>& by_antenna() const { return counts_; }

  friend bool operator==(const OutgoingTally&, const OutgoingTally&) = default;

 private:
  std::map<AntennaId, Counts> counts_;
};

OutgoingTally tally_outgoing(std::span<const CallRecord> records,
                             const std::set<UserId>& residents);

struct AggregateOptions {
  // Counts endemic residents as vulnerable even without a resident neighbor.
  bool count_zone_residents_as_vulnerable = false;
};

// One entry per registry antenna, in id order, zeros included. Receiver
// residency for VC_a uses the same `homes` as N_a.
std::vector<AntennaStats> aggregate(const HomeAssignment& homes,
                                    const CommGraph& graph,
                                    std::span<const CallRecord> records,
                                    const EndemicZone& zone,
                                    const AntennaRegistry& registry,
                                    const AggregateOptions& options = {});

// Keeps antennas with V_a/N_a > beta and N_a > min_population, both strict.
// Antennas with no residents never pass.
std::vector<AntennaStats> filter_map(std::span<const AntennaStats> stats,
                                     double beta, std::uint64_t min_population);

struct RiskMapParameters {
  double beta = 0.01;
  std::uint64_t min_population = 50;
  double color_max = 0.5;
  double radius_k = 1.0;
  bool count_zone_residents_as_vulnerable = false;

  friend bool operator==(const RiskMapParameters&, const RiskMapParameters&) = default;
};

struct RiskMap {
  std::vector<AntennaStats> stats;
  RiskMapParameters parameters;
  std::string zone_name;
  // Provenance: input digests, data time span, anything else the caller adds.
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

// `#RRGGBB` on a linear yellow (#FFFF00) to red (#FF0000) ramp; fractions at
// or above `color_max` are fully red.
std::string ramp_color(double frac, double color_max);

// FeatureCollection of Points with indicator properties. Circle radius is
// radius_k * sqrt(N_a) so that the rendered area tracks population. The
// parameters, zone and metadata are kept in the `risk_map` foreign member.
nlohmann::ordered_json export_geojson(const RiskMap& map);
std::string geojson_text(const RiskMap& map);

// Inverse of export_geojson for indicator values and parameters.
RiskMap parse_geojson(const nlohmann::json& doc);

// `antenna_id,lat,lon,residents,vulnerable,frac_vulnerable,calls_out,calls_to_endemic`
void write_stats_csv(std::ostream& out, std::span<const AntennaStats> stats);

}  // namespace cdrisk

#endif  // CDRISK_RISK_MAP_H_
