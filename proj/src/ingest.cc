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

#include "cdrisk/ingest.h"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "csv_util.h"

namespace cdrisk {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kBadFieldCount:
      return "bad_field_count";
    case RejectReason::kBadTimestamp:
      return "bad_timestamp";
    case RejectReason::kBadDirection:
      return "bad_direction";
    case RejectReason::kBadDuration:
      return "bad_duration";
    case RejectReason::kSelfCall:
      return "self_call";
    case RejectReason::kUnknownAntenna:
      return "unknown_antenna";
  }
  return "unknown";
}

void IngestReport::record_accepted(const CallRecord& record) {
  ++accepted_;
  users_.insert(record.caller);
  users_.insert(record.callee);
  antennas_.insert(record.antenna);
  if (!span_) {
    span_ = TimeRange{record.timestamp, record.timestamp};
  } else {
    span_->start = std::min(span_->start, record.timestamp);
    span_->end = std::max(span_->end, record.timestamp);
  }
}

void IngestReport::record_rejected(RejectReason reason) {
  ++rejected_[static_cast<std::size_t>(reason)];
}

void IngestReport::merge(const IngestReport& other) {
  accepted_ += other.accepted_;
  for (std::size_t i = 0; i < kNumRejectReasons; ++i) rejected_[i] += other.rejected_[i];
  users_.insert(other.users_.begin(), other.users_.end());
  antennas_.insert(other.antennas_.begin(), other.antennas_.end());
  if (other.span_) {
    if (!span_) {
      span_ = other.span_;
    } else {
      span_->start = std::min(span_->start, other.span_->start);
      span_->end = std::max(span_->end, other.span_->end);
    }
  }
}

std::uint64_t IngestReport::rejected_total() const {
  return std::accumulate(rejected_.begin(), rejected_.end(), std::uint64_t{0});
}

std::uint64_t IngestReport::lines_seen() const { return accepted_ + rejected_total(); }

nlohmann::ordered_json IngestReport::to_json() const {
  nlohmann::ordered_json j;
  j["lines_seen"] = lines_seen();
  j["accepted"] = accepted_;
  nlohmann::ordered_json rejected = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kNumRejectReasons; ++i) {
    rejected[std::string(to_string(static_cast<RejectReason>(i)))] = rejected_[i];
  }
  j["rejected_by_reason"] = rejected;
  j["rejected_total"] = rejected_total();
  j["distinct_users"] = users_.size();
  j["distinct_antennas"] = antennas_.size();
  if (span_) {
    j["time_span"] = {{"min", format_timestamp(span_->start)},
                      {"max", format_timestamp(span_->end)}};
  } else {
    j["time_span"] = nullptr;
  }
  return j;
}

std::variant<CallRecord, RejectReason> parse_cdr_line(
    std::string_view line, const AntennaRegistry& registry) {
  line = internal::strip_cr(line);
  const auto fields = internal::split_fields(line);
  if (fields.size() != 5 && fields.size() != 6) return RejectReason::kBadFieldCount;
  for (std::size_t i = 0; i < 5; ++i) {
    if (fields[i].empty()) return RejectReason::kBadFieldCount;
  }

  const auto timestamp = parse_timestamp(fields[2]);
  if (!timestamp) return RejectReason::kBadTimestamp;

  Direction direction;
  if (fields[3] == "I") {
    direction = Direction::kIncoming;
  } else if (fields[3] == "O") {
    direction = Direction::kOutgoing;
  } else {
    return RejectReason::kBadDirection;
  }

  std::int64_t duration = 0;
  if (fields.size() == 6) {
    const auto parsed = internal::parse_int(fields[5]);
    if (!parsed || *parsed < 0) return RejectReason::kBadDuration;
    duration = *parsed;
  }

  if (fields[0] == fields[1]) return RejectReason::kSelfCall;

  AntennaId antenna{std::string(fields[4])};
  if (!registry.contains(antenna)) return RejectReason::kUnknownAntenna;

  return CallRecord{UserId(std::string(fields[0])), UserId(std::string(fields[1])),
                    *timestamp, direction, std::move(antenna), duration};
}

IngestResult parse_cdr_stream(std::istream& in, const AntennaRegistry& registry) {
  if (!in.good()) throw IoError("CDR source is not readable");
  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    auto parsed = parse_cdr_line(line, registry);
    if (auto* record = std::get_if<CallRecord>(&parsed)) {
      result.report.record_accepted(*record);
      result.records.push_back(std::move(*record));
    } else {
      result.report.record_rejected(std::get<RejectReason>(parsed));
    }
  }
  if (in.bad()) throw IoError("read error while ingesting CDR source");
  return result;
}

IngestResult parse_cdr_file(const std::string& path,
                            const AntennaRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open CDR file {}", path));
  return parse_cdr_stream(in, registry);
}

void write_cdr_line(std::ostream& out, const CallRecord& record) {
  out << record.caller.str() << ',' << record.callee.str() << ','
      << format_timestamp(record.timestamp) << ','
      << (record.direction == Direction::kIncoming ? 'I' : 'O') << ','
      << record.antenna.str() << ',' << record.duration_s << '\n';
}

}  // namespace cdrisk
