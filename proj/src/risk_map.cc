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

#include "cdrisk/risk_map.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cdrisk/json_util.h"

namespace cdrisk {

VulnerableTagging tag_vulnerable(const CommGraph& graph,
                                 const std::set<UserId>& residents) {
  VulnerableTagging out;
  for (const UserId& r : residents) {
    if (!graph.nodes().contains(r)) {
      ++out.unknown_residents;
      continue;
    }
    for (UserId& v : graph.neighbors(r)) out.vulnerable.insert(std::move(v));
  }
  return out;
}

double AntennaStats::frac_vulnerable() const {
  return residents == 0 ? 0.0
                        : static_cast<double>(vulnerable) / static_cast<double>(residents);
}

void OutgoingTally::add(const CallRecord& record, const std::set<UserId>& residents) {
  if (record.direction != Direction::kOutgoing) return;
  Counts& c = counts_[record.antenna];
  ++c.calls_out;
  if (residents.contains(record.callee)) ++c.calls_to_endemic;
}

OutgoingTally& OutgoingTally::merge(const OutgoingTally& other) {
  for (const auto& [antenna, c] : other.counts_) {
    Counts& mine = counts_[antenna];
    mine.calls_out += c.calls_out;
    mine.calls_to_endemic += c.calls_to_endemic;
  }
  return *this;
}

OutgoingTally tally_outgoing(std::span<const CallRecord> records,
                             const std::set<UserId>& residents) {
  OutgoingTally tally;
  for (const CallRecord& r : records) tally.add(r, residents);
  return tally;
}

std::vector<AntennaStats> aggregate(const HomeAssignment& homes,
                                    const CommGraph& graph,
                                    std::span<const CallRecord> records,
                                    const EndemicZone& zone,
                                    const AntennaRegistry& registry,
                                    const AggregateOptions& options) {
  const std::set<UserId> residents = residents_of(homes, zone);
  const VulnerableTagging tagging = tag_vulnerable(graph, residents);

  std::map<AntennaId, AntennaStats> by_id;
  for (const Antenna& a : registry.antennas()) by_id[a.id].antenna = a;

  for (const auto& [user, entry] : homes.entries()) {
    auto it = by_id.find(entry.antenna);
    if (it == by_id.end()) {
      throw ValidationError(fmt::format("home antenna {} of user {} is not registered",
                                        entry.antenna.str(), user.str()));
    }
    ++it->second.residents;
    const bool vulnerable =
        tagging.vulnerable.contains(user) ||
        (options.count_zone_residents_as_vulnerable && residents.contains(user));
    if (vulnerable) ++it->second.vulnerable;
  }

  const OutgoingTally tally = tally_outgoing(records, residents);
  for (const auto& [antenna, c] : tally.by_antenna()) {
    auto it = by_id.find(antenna);
    if (it == by_id.end()) {
      throw ValidationError(
          fmt::format("record antenna {} is not registered", antenna.str()));
    }
    it->second.calls_out = c.calls_out;
    it->second.calls_to_endemic = c.calls_to_endemic;
  }

  std::vector<AntennaStats> out;
  out.reserve(by_id.size());
  for (auto& [id, s] : by_id) out.push_back(std::move(s));
  return out;
}

std::vector<AntennaStats> filter_map(std::span<const AntennaStats> stats, double beta,
                                     std::uint64_t min_population) {
  std::vector<AntennaStats> out;
  for (const AntennaStats& s : stats) {
    if (s.residents == 0) continue;
    if (s.frac_vulnerable() > beta && s.residents > min_population) out.push_back(s);
  }
  return out;
}

std::string ramp_color(double frac, double color_max) {
  double t = color_max > 0.0 ? frac / color_max : 1.0;
  t = std::clamp(t, 0.0, 1.0);
  const int green = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  return fmt::format("#FF{:02X}00", green);
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

nlohmann::ordered_json parameters_json(const RiskMapParameters& p) {
  nlohmann::ordered_json j;
  j["beta"] = p.beta;
  j["min_pop"] = p.min_population;
  j["color_max"] = p.color_max;
  j["radius_k"] = p.radius_k;
  j["count_zone_residents_as_vulnerable"] = p.count_zone_residents_as_vulnerable;
  return j;
}

}  // namespace

nlohmann::ordered_json export_geojson(const RiskMap& map) {
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const AntennaStats& s : map.stats) {
    const double frac = s.frac_vulnerable();
    nlohmann::ordered_json f;
    f["type"] = "Feature";
    f["geometry"] = {{"type", "Point"},
                     {"coordinates", {s.antenna.longitude, s.antenna.latitude}}};
    nlohmann::ordered_json props;
    props["antenna_id"] = s.antenna.id.str();
    props["residents"] = s.residents;
    props["vulnerable"] = s.vulnerable;
    props["frac_vulnerable"] = frac;
    props["calls_out"] = s.calls_out;
    props["calls_to_endemic"] = s.calls_to_endemic;
    props["marker_radius"] =
        map.parameters.radius_k * std::sqrt(static_cast<double>(s.residents));
    props["color"] = ramp_color(frac, map.parameters.color_max);
    f["properties"] = std::move(props);
    features.push_back(std::move(f));
  }
  doc["features"] = std::move(features);
  nlohmann::ordered_json meta;
  meta["zone"] = map.zone_name;
  meta["parameters"] = parameters_json(map.parameters);
  meta["antenna_count"] = map.stats.size();
  meta["metadata"] = map.metadata;
  doc["risk_map"] = std::move(meta);
  return doc;
}

std::string geojson_text(const RiskMap& map) {
  return dump_fixed(export_geojson(map), 6) + "\n";
}

RiskMap parse_geojson(const nlohmann::json& doc) {
  if (doc.value("type", "") != "FeatureCollection") {
    throw ValidationError("not a GeoJSON FeatureCollection");
  }
  RiskMap map;
  try {
    const auto& meta = doc.at("risk_map");
    map.zone_name = meta.at("zone").get<std::string>();
    const auto& p = meta.at("parameters");
    map.parameters.beta = p.at("beta").get<double>();
    map.parameters.min_population = p.at("min_pop").get<std::uint64_t>();
    map.parameters.color_max = p.at("color_max").get<double>();
    map.parameters.radius_k = p.at("radius_k").get<double>();
    map.parameters.count_zone_residents_as_vulnerable =
        p.at("count_zone_residents_as_vulnerable").get<bool>();
    map.metadata = meta.at("metadata");
    for (const auto& f : doc.at("features")) {
      const auto& props = f.at("properties");
      const auto& coords = f.at("geometry").at("coordinates");
      AntennaStats s;
      s.antenna.id = AntennaId(props.at("antenna_id").get<std::string>());
      s.antenna.longitude = coords.at(0).get<double>();
      s.antenna.latitude = coords.at(1).get<double>();
      s.residents = props.at("residents").get<std::uint64_t>();
      s.vulnerable = props.at("vulnerable").get<std::uint64_t>();
      s.calls_out = props.at("calls_out").get<std::uint64_t>();
      s.calls_to_endemic = props.at("calls_to_endemic").get<std::uint64_t>();
      if (round6(s.frac_vulnerable()) != round6(props.at("frac_vulnerable").get<double>())) {
        throw ValidationError(fmt::format("antenna {}: frac_vulnerable inconsistent with counts",
                                          s.antenna.id.str()));
      }
      map.stats.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed risk map GeoJSON: {}", e.what()));
  }
  return map;
}

void write_stats_csv(std::ostream& out, std::span<const AntennaStats> stats) {
  out << "antenna_id,lat,lon,residents,vulnerable,frac_vulnerable,calls_out,"
         "calls_to_endemic\n";
  for (const AntennaStats& s : stats) {
    out << fmt::format("{},{:.6f},{:.6f},{},{},{:.6f},{},{}\n", s.antenna.id.str(),
                       s.antenna.latitude, s.antenna.longitude, s.residents,
                       s.vulnerable, s.frac_vulnerable(), s.calls_out,
                       s.calls_to_endemic);
  }
}

}  // namespace cdrisk
