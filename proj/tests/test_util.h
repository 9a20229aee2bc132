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

#ifndef CDRISK_TESTS_TEST_UTIL_H_
#define CDRISK_TESTS_TEST_UTIL_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "cdrisk/random.h"
#include "cdrisk/registry.h"
#include "cdrisk/types.h"

namespace cdrisk::testing {

inline Timestamp at(int y, unsigned m, unsigned d, int hh = 0, int mm = 0, int ss = 0) {
  using namespace std::chrono;
  return sys_days{year{y} / month{m} / day{d}} + hours{hh} + minutes{mm} + seconds{ss};
}

inline CallRecord call(const std::string& caller, const std::string& callee, Timestamp t,
                       Direction dir, const std::string& antenna, std::int64_t duration = 0) {
  return CallRecord{UserId(caller), UserId(callee), t, dir, AntennaId(antenna), duration};
}

// 2015-08-05 is a Wednesday; 2015-08-08 a Saturday.
inline Timestamp wednesday(int hh, int mm = 0) { return at(2015, 8, 5, hh, mm); }
inline Timestamp saturday(int hh, int mm = 0) { return at(2015, 8, 8, hh, mm); }

inline AntennaRegistry small_registry(int n = 6) {
  AntennaRegistry r;
  for (int i = 0; i < n; ++i) {
    r.add(Antenna{AntennaId("A" + std::to_string(i)), -27.0 + 0.1 * i, -62.0 + 0.05 * i});
  }
  return r;
}

// Random validated records over `n_users` users and registry antennas
// A0..A{n_antennas-1}, timestamps spread over 2015.
inline std::vector<CallRecord> random_records(Rng& rng, std::size_t count, int n_users,
                                              int n_antennas) {
  std::vector<CallRecord> out;
  out.reserve(count);
  const Timestamp start = at(2015, 1, 1);
  while (out.size() < count) {
    const auto a = rng.uniform_index(static_cast<std::uint64_t>(n_users));
    const auto b = rng.uniform_index(static_cast<std::uint64_t>(n_users));
    if (a == b) continue;
    CallRecord r;
    r.caller = UserId("u" + std::to_string(a));
    r.callee = UserId("u" + std::to_string(b));
    r.timestamp = start + std::chrono::seconds(rng.uniform_index(365ULL * 86400));
    r.direction = rng.bernoulli(0.5) ? Direction::kOutgoing : Direction::kIncoming;
    r.antenna = AntennaId("A" + std::to_string(rng.uniform_index(n_antennas)));
    r.duration_s = static_cast<std::int64_t>(rng.uniform_index(600));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cdrisk::testing

#endif  // CDRISK_TESTS_TEST_UTIL_H_
