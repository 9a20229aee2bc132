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

#include "cdrisk/time_bucket.h"

#include <chrono>

namespace cdrisk {

std::string_view to_string(TimeBucket bucket) {
  switch (bucket) {
    case TimeBucket::kWeekday:
      return "weekday";
    case TimeBucket::kWeeknight:
      return "weeknight";
    case TimeBucket::kWeekend:
      return "weekend";
  }
  return "unknown";
}

TimeBucket classify_time(Timestamp t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const auto hour = duration_cast<hours>(t - day).count();
  // Days since Monday, 0..6.
  const unsigned today = weekday{day}.iso_encoding() - 1;
  const auto is_workday = [](unsigned d) { return d < 5; };

  if (hour >= 8 && hour < 20) {
    return is_workday(today) ? TimeBucket::kWeekday : TimeBucket::kWeekend;
  }
  // Night windows are owned by the day on which they open.
  const unsigned opened_on = hour >= 20 ? today : (today + 6) % 7;
  return is_workday(opened_on) ? TimeBucket::kWeeknight : TimeBucket::kWeekend;
}

}  // namespace cdrisk
