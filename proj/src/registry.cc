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

#include "cdrisk/registry.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "csv_util.h"
#include "json.hpp"

namespace cdrisk {

void AntennaRegistry::add(Antenna antenna) {
  if (antenna.id.empty()) throw ValidationError("antenna id is empty");
  if (!std::isfinite(antenna.latitude) || antenna.latitude < -90.0 ||
      antenna.latitude > 90.0 || !std::isfinite(antenna.longitude) ||
      antenna.longitude < -180.0 || antenna.longitude > 180.0) {
    throw ValidationError(fmt::format("antenna {} has out-of-range coordinates",
                                      antenna.id.str()));
  }
  const AntennaId id = antenna.id;
  if (!by_id_.emplace(id, std::move(antenna)).second) {
    throw ValidationError(fmt::format("duplicate antenna id {}", id.str()));
  }
}

const Antenna* AntennaRegistry::find(const AntennaId& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &it->second;
}

const Antenna& AntennaRegistry::at(const AntennaId& id) const {
  const Antenna* a = find(id);
  if (a == nullptr) {
    throw ValidationError(fmt::format("unknown antenna {}", id.str()));
  }
  return *a;
}

std::vector<Antenna> AntennaRegistry::antennas() const {
  std::vector<Antenna> out;
  out.reserve(by_id_.size());
  for (const auto& [id, antenna] : by_id_) out.push_back(antenna);
  return out;
}

AntennaRegistry load_registry(std::istream& in) {
  AntennaRegistry registry;
  std::string line;
  if (!std::getline(in, line) ||
      internal::trim(internal::strip_cr(line)) != "antenna_id,lat,lon") {
    throw ValidationError("antenna registry must start with header antenna_id,lat,lon");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = internal::strip_cr(line);
    if (internal::trim(view).empty()) continue;
    const auto fields = internal::split_fields(view);
    if (fields.size() != 3) {
      throw ValidationError(fmt::format("registry line {}: expected 3 fields", line_no));
    }
    const auto lat = internal::parse_double(internal::trim(fields[1]));
    const auto lon = internal::parse_double(internal::trim(fields[2]));
    if (!lat || !lon) {
      throw ValidationError(fmt::format("registry line {}: bad coordinates", line_no));
    }
    registry.add(Antenna{AntennaId(std::string(internal::trim(fields[0]))), *lat, *lon});
  }
  return registry;
}

AntennaRegistry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open antenna registry {}", path));
  return load_registry(in);
}

void write_registry(std::ostream& out, const AntennaRegistry& registry) {
  out << "antenna_id,lat,lon\n";
  for (const Antenna& a : registry.antennas()) {
    out << fmt::format("{},{:.6f},{:.6f}\n", a.id.str(), a.latitude, a.longitude);
  }
}

EndemicZone::EndemicZone(std::string name, std::set<AntennaId> members,
                         const AntennaRegistry& registry)
    : name_(std::move(name)), members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("endemic zone has no antennas");
  for (const AntennaId& id : members_) {
    if (!registry.contains(id)) {
      throw ValidationError(
          fmt::format("endemic zone member {} is not in the registry", id.str()));
    }
  }
}

EndemicZone load_zone(std::istream& in, std::string name,
                      const AntennaRegistry& registry) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string_view body = internal::trim(text);
  std::set<AntennaId> members;

  if (!body.empty() && body.front() == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(fmt::format("zone JSON: {}", e.what()));
    }
    for (const auto& item : doc) {
      if (!item.is_string()) throw ValidationError("zone JSON must be an array of strings");
      members.insert(AntennaId(item.get<std::string>()));
    }
    return EndemicZone(std::move(name), std::move(members), registry);
  }

  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line) || internal::trim(line) != "antenna_id") {
    throw ValidationError("zone CSV must start with header antenna_id");
  }
  while (std::getline(lines, line)) {
    const std::string_view id = internal::trim(line);
    if (!id.empty()) members.insert(AntennaId(std::string(id)));
  }
  return EndemicZone(std::move(name), std::move(members), registry);
}

EndemicZone load_zone_file(const std::string& path, std::string name,
                           const AntennaRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open zone file {}", path));
  return load_zone(in, std::move(name), registry);
}

void write_zone_csv(std::ostream& out, const EndemicZone& zone) {
  out << "antenna_id\n";
  for (const AntennaId& id : zone.members()) out << id.str() << '\n';
}

}  // namespace cdrisk
