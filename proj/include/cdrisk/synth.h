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

#ifndef CDRISK_SYNTH_H_
#define CDRISK_SYNTH_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cdrisk/registry.h"
#include "cdrisk/types.h"
#include "json.hpp"

namespace cdrisk {

// Parameters of the synthetic CDR generator.
//
// Antennas sit on a near-square grid; the endemic zone is the first
// ceil(endemic_antenna_fraction * n_antennas) antennas in column-major order,
// so it occupies the western columns. Each user is independently a migrant
// with probability migrant_fraction (T0 home endemic, T1 home non-endemic);
// everyone else keeps one home drawn uniformly over all antennas.
//
// Social ties follow a two-block model. Endemic stayers pick contacts among
// endemic stayers. A migrant's contact is an endemic stayer with probability
// tie_strength_endemic. A non-endemic stayer whose home is h grid hops from
// the zone picks an endemic stayer with probability
// neighbor_tie_strength * tie_decay_per_hop^(h - 1). Other contacts are
// drawn among users living outside the zone in T1.
struct SynthConfig {
  std::uint64_t seed = 42;
  std::uint32_t n_users = 2000;
  std::uint32_t n_antennas = 25;
  double endemic_antenna_fraction = 0.2;
  double p_home_call = 0.9;
  double migrant_fraction = 0.2;
  double mean_calls_per_user_per_period = 100.0;
  std::uint32_t min_weeknight_calls = 20;
  double tie_strength_endemic = 0.7;
  double neighbor_tie_strength = 0.3;
  double tie_decay_per_hop = 0.5;
  std::uint32_t contacts_per_user = 8;
  double mean_duration_s = 120.0;
  double grid_origin_lat = -27.0;
  double grid_origin_lon = -62.0;
  double grid_spacing_deg = 0.1;
  std::string zone_name = "endemic";

  // Throws ValidationError on out-of-range values.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

struct PlantedUser {
  AntennaId t0_home;
  AntennaId t1_home;
  bool lived_in_endemic_t0 = false;
  bool migrant = false;
  std::vector<UserId> contacts;  // sorted

  friend bool operator==(const PlantedUser&, const PlantedUser&) = default;
};

struct GroundTruth {
  std::map<UserId, PlantedUser> users;

  std::size_t migrant_count() const;
  // `{user_id: {t0_home, t1_home, lived_in_endemic_t0, migrant, contacts}}`
  nlohmann::ordered_json to_json() const;
  static GroundTruth from_json(const nlohmann::json& doc);
};

struct SynthCorpus {
  std::vector<CallRecord> records;
  AntennaRegistry registry;
  std::set<AntennaId> zone_members;
  std::string zone_name;
  GroundTruth truth;
  // Chebyshev grid distance from each antenna to the nearest zone antenna.
  std::map<AntennaId, int> hops_from_zone;

  EndemicZone zone() const { return EndemicZone(zone_name, zone_members, registry); }

  std::string cdr_csv() const;
  std::string registry_csv() const;
  std::string zone_csv() const;
  std::string ground_truth_json() const;
};

// Deterministic in (config, window). Users are generated independently, user
// i from its own stream seeded with `seed XOR i`; the home and contact
// structure comes from a separate stream seeded with
// `seed XOR 0x5EED57A7E0000000`. Call buckets are drawn with weights weekday
// 0.5, weeknight 0.3, weekend 0.2 (weeknight count floored at
// min_weeknight_calls) per period, timestamps uniform within the bucket.
// Weeknight calls route via the home antenna with probability p_home_call and
// otherwise via a grid neighbor; other calls route uniformly over the home and
// its grid neighbors. Throws ValidationError if n_users == 0, n_antennas < 2,
// or the zone would be empty or cover every antenna.
SynthCorpus generate(const SynthConfig& config, const StudyWindow& window);

// Writes cdr.csv, antennas.csv, zone.csv and ground_truth.json into `dir`.
void write_corpus(const SynthCorpus& corpus, const std::string& dir);

}  // namespace cdrisk

#endif  // CDRISK_SYNTH_H_
