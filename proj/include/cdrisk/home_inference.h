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

#ifndef CDRISK_HOME_INFERENCE_H_
#define CDRISK_HOME_INFERENCE_H_

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string_view>

#include "cdrisk/registry.h"
#include "cdrisk/types.h"

namespace cdrisk {

enum class HomeProvenance { kWeeknight, kFallbackAllCalls };

std::string_view to_string(HomeProvenance provenance);

struct HomeEntry {
  AntennaId antenna;
  HomeProvenance provenance = HomeProvenance::kWeeknight;

  friend bool operator==(const HomeEntry&, const HomeEntry&) = default;
};

// User -> home antenna. Users without records have no entry.
class HomeAssignment {
 public:
  void assign(UserId user, HomeEntry entry) { homes_[std::move(user)] = std::move(entry); }

  const HomeEntry* find(const UserId& user) const;
  bool contains(const UserId& user) const { return homes_.contains(user); }
  std::size_t size() const { return homes_.size(); }
  bool empty() const { return homes_.empty(); }

  const std::map<UserId, HomeEntry>& entries() const { return homes_; }

  friend bool operator==(const HomeAssignment&, const HomeAssignment&) = default;

 private:
  std::map<UserId, HomeEntry> homes_;
};

// Home of each client (record `caller`): the antenna with the most weeknight
// records. Ties go to the antenna with more records over all buckets, then to
// the smallest antenna id. Clients with no weeknight records fall back to the
// most used antenna overall (same id tie-break) and are flagged. Only records
// inside `window` count when it is given. The result does not depend on
// record order.
HomeAssignment infer_homes(std::span<const CallRecord> records,
                           std::optional<TimeRange> window = std::nullopt);

// Users whose home antenna is a zone member.
std::set<UserId> residents_of(const HomeAssignment& homes, const EndemicZone& zone);

// `user_id,home_antenna,provenance`
void write_homes_csv(std::ostream& out, const HomeAssignment& homes);

}  // namespace cdrisk

#endif  // CDRISK_HOME_INFERENCE_H_
