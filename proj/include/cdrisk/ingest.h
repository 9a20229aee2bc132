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

#ifndef CDRISK_INGEST_H_
#define CDRISK_INGEST_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdrisk/registry.h"
#include "cdrisk/types.h"
#include "json.hpp"

namespace cdrisk {

enum class RejectReason : std::uint8_t {
  kBadFieldCount = 0,
  kBadTimestamp,
  kBadDirection,
  kBadDuration,
  kSelfCall,
  kUnknownAntenna,
};
inline constexpr std::size_t kNumRejectReasons = 6;

std::string_view to_string(RejectReason reason);

// Data-quality summary of one or more ingestion passes. Reports from shards
// merge by summing counters and taking the union of distinct ids and the hull
// of time spans.
class IngestReport {
 public:
  void record_accepted(const CallRecord& record);
  void record_rejected(RejectReason reason);
  void merge(const IngestReport& other);

  std::uint64_t lines_seen() const;
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t rejected(RejectReason reason) const {
    return rejected_[static_cast<std::size_t>(reason)];
  }
  std::uint64_t rejected_total() const;
  std::size_t distinct_users() const { return users_.size(); }
  std::size_t distinct_antennas() const { return antennas_.size(); }
  const std::optional<TimeRange>& time_span() const { return span_; }

  // `time_span.max` is the latest accepted timestamp (inclusive).
  nlohmann::ordered_json to_json() const;

  friend bool operator==(const IngestReport&, const IngestReport&) = default;

 private:
  std::uint64_t accepted_ = 0;
  std::array<std::uint64_t, kNumRejectReasons> rejected_{};
  std::set<UserId> users_;
  std::set<AntennaId> antennas_;
  std::optional<TimeRange> span_;
};

struct IngestResult {
  std::vector<CallRecord> records;
  IngestReport report;
};

// Parses one CDR line: `caller,callee,timestamp,direction,antenna[,duration_s]`.
// Checks run in the order field count, timestamp, direction, duration,
// self-call, unknown antenna; the first failure is the reason reported.
std::variant<CallRecord, RejectReason> parse_cdr_line(
    std::string_view line, const AntennaRegistry& registry);

// Every line is either accepted or counted under exactly one reject reason.
// Throws IoError if the stream is unreadable.
IngestResult parse_cdr_stream(std::istream& in, const AntennaRegistry& registry);
IngestResult parse_cdr_file(const std::string& path,
                            const AntennaRegistry& registry);

// Emits the same line format parse_cdr_line accepts, always with duration.
void write_cdr_line(std::ostream& out, const CallRecord& record);

}  // namespace cdrisk

#endif  // CDRISK_INGEST_H_
