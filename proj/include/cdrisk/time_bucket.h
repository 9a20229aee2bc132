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

#ifndef CDRISK_TIME_BUCKET_H_
#define CDRISK_TIME_BUCKET_H_

#include <array>
#include <cstdint>
#include <string_view>

#include "cdrisk/types.h"

namespace cdrisk {

enum class TimeBucket : std::uint8_t { kWeekday = 0, kWeeknight = 1, kWeekend = 2 };

inline constexpr std::array<TimeBucket, 3> kAllBuckets = {
    TimeBucket::kWeekday, TimeBucket::kWeeknight, TimeBucket::kWeekend};

std::string_view to_string(TimeBucket bucket);

// Weekday is Monday-Friday 08:00-19:59. A night window (20:00-07:59) belongs
// to the day it opens on: Monday-Friday nights are weeknight, so Saturday
// 00:00-07:59 is still weeknight, while Saturday and Sunday nights (up to
// Monday 07:59) are weekend. Saturday and Sunday daytime are weekend.
TimeBucket classify_time(Timestamp t);

}  // namespace cdrisk

#endif  // CDRISK_TIME_BUCKET_H_
