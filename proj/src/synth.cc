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

#include "cdrisk/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "cdrisk/ingest.h"
#include "cdrisk/random.h"
#include "cdrisk/time_bucket.h"

namespace cdrisk {
namespace {

constexpr std::uint64_t kStructureSalt = 0x5EED57A7E0000000ULL;
constexpr std::array<double, 3> kBucketWeights = {0.5, 0.3, 0.2};

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

struct Grid {
  int cols = 0;
  int rows = 0;
  std::vector<AntennaId> ids;   // index = col * rows + row
  std::vector<int> col_of;
  std::vector<int> row_of;
  std::vector<std::vector<std::size_t>> nearby;  // Chebyshev distance 1
};

Grid make_grid(std::uint32_t n) {
  Grid g;
  g.cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  g.rows = static_cast<int>((n + g.cols - 1) / g.cols);
  const int width = static_cast<int>(std::to_string(n - 1).size());
  for (std::uint32_t i = 0; i < n; ++i) {
    g.ids.emplace_back(fmt::format("A{:0{}d}", i, width));
    g.col_of.push_back(static_cast<int>(i) / g.rows);
    g.row_of.push_back(static_cast<int>(i) % g.rows);
  }
  g.nearby.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(g.col_of[i] - g.col_of[j]) <= 1 &&
          std::abs(g.row_of[i] - g.row_of[j]) <= 1) {
        g.nearby[i].push_back(j);
      }
    }
  }
  return g;
}

Timestamp random_instant_in_bucket(Rng& rng, const TimeRange& range, TimeBucket bucket) {
  const auto span = (range.end - range.start).count();
  while (true) {
    const Timestamp t =
        range.start + std::chrono::seconds(rng.uniform_index(static_cast<std::uint64_t>(span)));
    if (classify_time(t) == bucket) return t;
  }
}

// Draws up to `want` distinct contacts; `pick` returns a candidate index or
// SIZE_MAX when its pool is empty.
template <typename Pick>
std::vector<std::size_t> draw_contacts(std::size_t self, std::uint32_t want, Pick pick) {
  std::vector<std::size_t> out;
  for (std::uint32_t attempt = 0; attempt < want * 20 && out.size() < want; ++attempt) {
    const std::size_t c = pick();
    if (c == SIZE_MAX || c == self) continue;
    if (std::find(out.begin(), out.end(), c) != out.end()) continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_users == 0) throw ValidationError("synth: n_users must be positive");
  if (n_antennas < 2) throw ValidationError("synth: n_antennas must be at least 2");
  if (!in_unit(endemic_antenna_fraction) || !in_unit(p_home_call) ||
      !in_unit(migrant_fraction) || !in_unit(tie_strength_endemic) ||
      !in_unit(neighbor_tie_strength) || !in_unit(tie_decay_per_hop)) {
    throw ValidationError("synth: fractions and probabilities must lie in [0, 1]");
  }
  if (!(mean_calls_per_user_per_period > 0.0)) {
    throw ValidationError("synth: mean_calls_per_user_per_period must be positive");
  }
  if (!(mean_duration_s >= 0.0)) throw ValidationError("synth: mean_duration_s must be >= 0");
  if (!(grid_spacing_deg > 0.0)) throw ValidationError("synth: grid_spacing_deg must be positive");
  const auto zone_size =
      static_cast<std::uint32_t>(std::ceil(endemic_antenna_fraction * n_antennas));
  if (zone_size == 0 || zone_size >= n_antennas) {
    throw ValidationError(
        "synth: endemic_antenna_fraction must leave both endemic and non-endemic antennas");
  }
}

nlohmann::ordered_json SynthConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["n_users"] = n_users;
  j["n_antennas"] = n_antennas;
  j["endemic_antenna_fraction"] = endemic_antenna_fraction;
  j["p_home_call"] = p_home_call;
  j["migrant_fraction"] = migrant_fraction;
  j["mean_calls_per_user_per_period"] = mean_calls_per_user_per_period;
  j["min_weeknight_calls"] = min_weeknight_calls;
  j["tie_strength_endemic"] = tie_strength_endemic;
  j["neighbor_tie_strength"] = neighbor_tie_strength;
  j["tie_decay_per_hop"] = tie_decay_per_hop;
  j["contacts_per_user"] = contacts_per_user;
  j["mean_duration_s"] = mean_duration_s;
  j["grid_origin_lat"] = grid_origin_lat;
  j["grid_origin_lon"] = grid_origin_lon;
  j["grid_spacing_deg"] = grid_spacing_deg;
  j["zone_name"] = zone_name;
  return j;
}

std::size_t GroundTruth::migrant_count() const {
  return static_cast<std::size_t>(std::count_if(
      users.begin(), users.end(), [](const auto& kv) { return kv.second.migrant; }));
}

nlohmann::ordered_json GroundTruth::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [id, u] : users) {
    nlohmann::ordered_json entry;
    entry["t0_home"] = u.t0_home.str();
    entry["t1_home"] = u.t1_home.str();
    entry["lived_in_endemic_t0"] = u.lived_in_endemic_t0;
    entry["migrant"] = u.migrant;
    nlohmann::ordered_json contacts = nlohmann::ordered_json::array();
    for (const UserId& c : u.contacts) contacts.push_back(c.str());
    entry["contacts"] = std::move(contacts);
    doc[id.str()] = std::move(entry);
  }
  return doc;
}

GroundTruth GroundTruth::from_json(const nlohmann::json& doc) {
  GroundTruth truth;
  try {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      PlantedUser u;
      u.t0_home = AntennaId(it.value().at("t0_home").get<std::string>());
      u.t1_home = AntennaId(it.value().at("t1_home").get<std::string>());
      u.lived_in_endemic_t0 = it.value().at("lived_in_endemic_t0").get<bool>();
      u.migrant = it.value().value("migrant", false);
      if (it.value().contains("contacts")) {
        for (const auto& c : it.value().at("contacts")) u.contacts.emplace_back(c.get<std::string>());
      }
      truth.users.emplace(UserId(it.key()), std::move(u));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed ground truth: {}", e.what()));
  }
  return truth;
}

SynthCorpus generate(const SynthConfig& config, const StudyWindow& window) {
  config.validate();
  const Grid grid = make_grid(config.n_antennas);
  const std::size_t n_antennas = config.n_antennas;
  const auto zone_size = static_cast<std::size_t>(
      std::ceil(config.endemic_antenna_fraction * config.n_antennas));

  SynthCorpus corpus;
  corpus.zone_name = config.zone_name;
  for (std::size_t a = 0; a < n_antennas; ++a) {
    corpus.registry.add(Antenna{
        grid.ids[a],
        config.grid_origin_lat + grid.row_of[a] * config.grid_spacing_deg,
        config.grid_origin_lon + grid.col_of[a] * config.grid_spacing_deg});
  }
  for (std::size_t a = 0; a < zone_size; ++a) corpus.zone_members.insert(grid.ids[a]);

  std::vector<int> hops(n_antennas, 0);
  for (std::size_t a = 0; a < n_antennas; ++a) {
    int best = INT32_MAX;
    for (std::size_t z = 0; z < zone_size; ++z) {
      best = std::min(best, std::max(std::abs(grid.col_of[a] - grid.col_of[z]),
                                     std::abs(grid.row_of[a] - grid.row_of[z])));
    }
    hops[a] = best;
    corpus.hops_from_zone[grid.ids[a]] = best;
  }

  // Homes.
  const std::size_t n_users = config.n_users;
  Rng structure(config.seed ^ kStructureSalt);
  std::vector<std::size_t> t0_home(n_users), t1_home(n_users);
  std::vector<bool> migrant(n_users, false);
  for (std::size_t u = 0; u < n_users; ++u) {
    if (structure.bernoulli(config.migrant_fraction)) {
      migrant[u] = true;
      t0_home[u] = structure.uniform_index(zone_size);
      t1_home[u] = zone_size + structure.uniform_index(n_antennas - zone_size);
    } else {
      t0_home[u] = t1_home[u] = structure.uniform_index(n_antennas);
    }
  }

  // Contacts.
  std::vector<std::size_t> endemic_pool, outside_pool;
  for (std::size_t u = 0; u < n_users; ++u) {
    const bool endemic_stayer = !migrant[u] && t1_home[u] < zone_size;
    (endemic_stayer ? endemic_pool : outside_pool).push_back(u);
  }
  const auto pick_from = [&](const std::vector<std::size_t>& pool) -> std::size_t {
    if (pool.empty()) return SIZE_MAX;
    return pool[structure.uniform_index(pool.size())];
  };
  std::vector<std::set<std::size_t>> adjacency(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    double p_endemic;
    if (migrant[u]) {
      p_endemic = config.tie_strength_endemic;
    } else if (t1_home[u] < zone_size) {
      p_endemic = 1.0;
    } else {
      p_endemic = config.neighbor_tie_strength *
                  std::pow(config.tie_decay_per_hop, hops[t1_home[u]] - 1);
    }
    const auto chosen = draw_contacts(u, config.contacts_per_user, [&]() {
      return structure.bernoulli(p_endemic) ? pick_from(endemic_pool)
                                            : pick_from(outside_pool);
    });
    for (std::size_t c : chosen) {
      adjacency[u].insert(c);
      adjacency[c].insert(u);
    }
  }

  const int user_width = static_cast<int>(std::to_string(n_users - 1).size());
  std::vector<UserId> user_ids;
  user_ids.reserve(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    user_ids.emplace_back(fmt::format("u{:0{}d}", u, user_width));
  }

  // Calls, one independent stream per user.
  const std::array<const TimeRange*, 2> periods = {&window.t0(), &window.t1()};
  for (std::size_t u = 0; u < n_users; ++u) {
    Rng rng(config.seed ^ static_cast<std::uint64_t>(u));
    const std::vector<std::size_t> contacts(adjacency[u].begin(), adjacency[u].end());
    for (int p = 0; p < 2; ++p) {
      const std::size_t home = p == 0 ? t0_home[u] : t1_home[u];
      const auto& nearby = grid.nearby[home];
      std::vector<CallRecord> period_records;
      for (TimeBucket bucket : kAllBuckets) {
        const auto b = static_cast<std::size_t>(bucket);
        std::uint64_t n_calls =
            rng.poisson(config.mean_calls_per_user_per_period * kBucketWeights[b]);
        if (bucket == TimeBucket::kWeeknight) {
          n_calls = std::max<std::uint64_t>(n_calls, config.min_weeknight_calls);
        }
        for (std::uint64_t k = 0; k < n_calls; ++k) {
          CallRecord r;
          r.caller = user_ids[u];
          const std::size_t callee =
              contacts.empty()
                  ? (u + 1 + rng.uniform_index(n_users - 1)) % n_users
                  : contacts[rng.uniform_index(contacts.size())];
          if (callee == u) continue;  // only when n_users == 1
          r.callee = user_ids[callee];
          r.timestamp = random_instant_in_bucket(rng, *periods[p], bucket);
          r.direction = rng.bernoulli(0.5) ? Direction::kOutgoing : Direction::kIncoming;
          std::size_t antenna = home;
          if (bucket == TimeBucket::kWeeknight) {
            if (!rng.bernoulli(config.p_home_call) && !nearby.empty()) {
              antenna = nearby[rng.uniform_index(nearby.size())];
            }
          } else {
            const std::size_t pick = rng.uniform_index(nearby.size() + 1);
            if (pick < nearby.size()) antenna = nearby[pick];
          }
          r.antenna = grid.ids[antenna];
          r.duration_s = static_cast<std::int64_t>(
              std::llround(rng.exponential(config.mean_duration_s)));
          period_records.push_back(std::move(r));
        }
      }
      std::stable_sort(period_records.begin(), period_records.end(),
                       [](const CallRecord& a, const CallRecord& b) {
                         return a.timestamp < b.timestamp;
                       });
      for (CallRecord& r : period_records) corpus.records.push_back(std::move(r));
    }

    PlantedUser planted;
    planted.t0_home = grid.ids[t0_home[u]];
    planted.t1_home = grid.ids[t1_home[u]];
    planted.lived_in_endemic_t0 = t0_home[u] < zone_size;
    planted.migrant = migrant[u];
    for (std::size_t c : contacts) planted.contacts.push_back(user_ids[c]);
    std::sort(planted.contacts.begin(), planted.contacts.end());
    corpus.truth.users.emplace(user_ids[u], std::move(planted));
  }
  return corpus;
}

std::string SynthCorpus::cdr_csv() const {
  std::ostringstream out;
  for (const CallRecord& r : records) write_cdr_line(out, r);
  return out.str();
}

std::string SynthCorpus::registry_csv() const {
  std::ostringstream out;
  write_registry(out, registry);
  return out.str();
}

std::string SynthCorpus::zone_csv() const {
  std::ostringstream out;
  write_zone_csv(out, zone());
  return out.str();
}

std::string SynthCorpus::ground_truth_json() const { return truth.to_json().dump(2) + "\n"; }

void write_corpus(const SynthCorpus& corpus, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot write {}", path));
    out << content;
    if (!out) throw IoError(fmt::format("write failed for {}", path));
  };
  write("cdr.csv", corpus.cdr_csv());
  write("antennas.csv", corpus.registry_csv());
  write("zone.csv", corpus.zone_csv());
  write("ground_truth.json", corpus.ground_truth_json());
}

}  // namespace cdrisk
