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

#ifndef CDRISK_REGISTRY_H_
#define CDRISK_REGISTRY_H_

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cdrisk/types.h"

namespace cdrisk {

struct Antenna {
  AntennaId id;
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]

  friend bool operator==(const Antenna&, const Antenna&) = default;
};

// Id-unique set of antennas with coordinates. Iteration is in id order.
class AntennaRegistry {
 public:
  // Throws ValidationError on duplicate ids, empty ids or out-of-range
  // coordinates.
  void add(Antenna antenna);

  const Antenna* find(const AntennaId& id) const;
  const Antenna& at(const AntennaId& id) const;
  bool contains(const AntennaId& id) const { return by_id_.contains(id); }
  std::size_t size() const { return by_id_.size(); }

  std::vector<Antenna> antennas() const;

 private:
  std::map<AntennaId, Antenna> by_id_;
};

// Reads `antenna_id,lat,lon` with that exact header.
AntennaRegistry load_registry(std::istream& in);
AntennaRegistry load_registry_file(const std::string& path);
void write_registry(std::ostream& out, const AntennaRegistry& registry);

// Set of antennas covering the endemic region.
class EndemicZone {
 public:
  // Throws ValidationError if `members` is empty or any member is missing
  // from `registry`.
  EndemicZone(std::string name, std::set<AntennaId> members,
              const AntennaRegistry& registry);

  const std::string& name() const { return name_; }
  const std::set<AntennaId>& members() const { return members_; }
  bool contains(const AntennaId& id) const { return members_.contains(id); }

 private:
  std::string name_;
  std::set<AntennaId> members_;
};

// Accepts either a CSV with header `antenna_id` and one id per row, or a JSON
// array of ids.
EndemicZone load_zone(std::istream& in, std::string name,
                      const AntennaRegistry& registry);
EndemicZone load_zone_file(const std::string& path, std::string name,
                           const AntennaRegistry& registry);
void write_zone_csv(std::ostream& out, const EndemicZone& zone);

}  // namespace cdrisk

#endif  // CDRISK_REGISTRY_H_
