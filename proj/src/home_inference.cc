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

#include "cdrisk/home_inference.h"

#include <cstdint>
#include <tuple>
#include <unordered_map>

#include "cdrisk/time_bucket.h"

namespace cdrisk {

std::string_view to_string(HomeProvenance provenance) {
  return provenance == HomeProvenance::kWeeknight ? "weeknight" : "fallback_all_calls";
}

const HomeEntry* HomeAssignment::find(const UserId& user) const {
  auto it = homes_.find(user);
  return it == homes_.end() ? nullptr : &it->second;
}

namespace {

struct AntennaUse {
  std::uint64_t weeknight = 0;
  std::uint64_t total = 0;
};

}  // namespace

HomeAssignment infer_homes(std::span<const CallRecord> records,
                           std::optional<TimeRange> window) {
  // Ordered inner map: iteration by ascending antenna id makes the final
  // tie-break a strict `>` comparison.
  std::unordered_map<UserId, std::map<AntennaId, AntennaUse>> usage;
  for (const CallRecord& r : records) {
    if (window && !window->contains(r.timestamp)) continue;
    AntennaUse& use = usage[r.caller][r.antenna];
    ++use.total;
    if (classify_time(r.timestamp) == TimeBucket::kWeeknight) ++use.weeknight;
  }

  HomeAssignment homes;
  for (const auto& [user, per_antenna] : usage) {
    const AntennaId* best = nullptr;
    AntennaUse best_use;
    for (const auto& [antenna, use] : per_antenna) {
      if (best == nullptr || std::tie(use.weeknight, use.total) >
                                 std::tie(best_use.weeknight, best_use.total)) {
        best = &antenna;
        best_use = use;
      }
    }
    homes.assign(user, HomeEntry{*best, best_use.weeknight > 0
                                            ? HomeProvenance::kWeeknight
                                            : HomeProvenance::kFallbackAllCalls});
  }
  return homes;
}

std::set<UserId> residents_of(const HomeAssignment& homes, const EndemicZone& zone) {
  std::set<UserId> residents;
  for (const auto& [user, entry] : homes.entries()) {
    if (zone.contains(entry.antenna)) residents.insert(user);
  }
  return residents;
}

void write_homes_csv(std::ostream& out, const HomeAssignment& homes) {
  out << "user_id,home_antenna,provenance\n";
  for (const auto& [user, entry] : homes.entries()) {
    out << user.str() << ',' << entry.antenna.str() << ',' << to_string(entry.provenance)
        << '\n';
  }
}

}  // namespace cdrisk
