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

#ifndef CDRISK_TYPES_H_
#define CDRISK_TYPES_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cdrisk {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs or parameters: malformed files, unknown ids, invalid configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Unreadable or unwritable sources.
class IoError : public Error {
 public:
  using Error::Error;
};

// Opaque string identifier that cannot be mixed up with other id kinds.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;

 private:
  std::string value_;
};

struct UserTag {};
struct AntennaTag {};
using UserId = StrongId<UserTag>;
using AntennaId = StrongId<AntennaTag>;

// Second-resolution UTC instant.
using Timestamp = std::chrono::sys_seconds;

// Parses `YYYY-MM-DDThh:mm:ssZ`. Returns nullopt on any deviation, including
// impossible calendar dates.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Direction of a call relative to the logged (billed) client.
enum class Direction : std::uint8_t { kIncoming = 0, kOutgoing = 1 };

inline Direction flip(Direction d) {
  return d == Direction::kIncoming ? Direction::kOutgoing : Direction::kIncoming;
}

// One anonymized communication event as logged for `caller`. `direction` and
// `antenna` both refer to `caller`; `callee` is the counterparty.
struct CallRecord {
  UserId caller;
  UserId callee;
  Timestamp timestamp;
  Direction direction = Direction::kOutgoing;
  AntennaId antenna;
  std::int64_t duration_s = 0;

  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

// Half-open interval [start, end).
struct TimeRange {
  Timestamp start;
  Timestamp end;

  bool contains(Timestamp t) const { return start <= t && t < end; }
  friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

// Past (T0) and present (T1) observation windows.
class StudyWindow {
 public:
  // Throws ValidationError unless t0_start < t0_end <= t1_start < t1_end.
  StudyWindow(Timestamp t0_start, Timestamp t0_end, Timestamp t1_start,
              Timestamp t1_end);

  // January 2014 - July 2015 as the past, August - December 2015 as the
  // present.
  static StudyWindow default_window();

  const TimeRange& t0() const { return t0_; }
  const TimeRange& t1() const { return t1_; }

 private:
  TimeRange t0_;
  TimeRange t1_;
};

}  // namespace cdrisk

template <typename Tag>
struct std::hash<cdrisk::StrongId<Tag>> {
  std::size_t operator()(const cdrisk::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // CDRISK_TYPES_H_
