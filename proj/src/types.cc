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

#include "cdrisk/types.h"

#include <charconv>

#include <fmt/format.h>

namespace cdrisk {
namespace {

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len,
                 int& out) {
  const char* first = text.data() + pos;
  const char* last = first + len;
  for (const char* p = first; p != last; ++p) {
    if (*p < '0' || *p > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  // 0123456789012345678 9
  // YYYY-MM-DDThh:mm:ss Z
  if (text.size() != 20) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  if (!parse_fixed(text, 0, 4, year) || !parse_fixed(text, 5, 2, month) ||
      !parse_fixed(text, 8, 2, day) || !parse_fixed(text, 11, 2, hour) ||
      !parse_fixed(text, 14, 2, minute) || !parse_fixed(text, 17, 2, second)) {
    return std::nullopt;
  }
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
  const std::chrono::year_month_day ymd{
      std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd} + std::chrono::hours{hour} +
         std::chrono::minutes{minute} + std::chrono::seconds{second};
}

std::string format_timestamp(Timestamp t) {
  const auto days = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss hms{t - days};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

StudyWindow::StudyWindow(Timestamp t0_start, Timestamp t0_end,
                         Timestamp t1_start, Timestamp t1_end)
    : t0_{t0_start, t0_end}, t1_{t1_start, t1_end} {
  if (!(t0_start < t0_end && t0_end <= t1_start && t1_start < t1_end)) {
    throw ValidationError(
        fmt::format("invalid study window: need t0_start < t0_end <= "
                    "t1_start < t1_end, got {} {} {} {}",
                    format_timestamp(t0_start), format_timestamp(t0_end),
                    format_timestamp(t1_start), format_timestamp(t1_end)));
  }
}

StudyWindow StudyWindow::default_window() {
  using namespace std::chrono;
  return StudyWindow(sys_days{2014y / January / 1}, sys_days{2015y / August / 1},
                     sys_days{2015y / August / 1},
                     sys_days{2016y / January / 1});
}

}  // namespace cdrisk
