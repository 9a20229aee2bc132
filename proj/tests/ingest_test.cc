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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cdrisk/ingest.h"
#include "test_util.h"

namespace cdrisk {
namespace {

AntennaRegistry registry_with_a17() {
  AntennaRegistry r;
  r.add(Antenna{AntennaId("A17"), -27.4, -60.9});
  r.add(Antenna{AntennaId("A18"), -27.5, -60.8});
  return r;
}

IngestResult parse_text(const std::string& text, const AntennaRegistry& r) {
  std::istringstream in(text);
  return parse_cdr_stream(in, r);
}

TEST(ParseCdrLineTest, AcceptsWellFormedLine) {
  const auto r = registry_with_a17();
  const IngestResult result = parse_text("u1,u2,2015-08-03T09:15:00Z,O,A17\n", r);
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_EQ(result.report.accepted(), 1u);
  const CallRecord& rec = result.records[0];
  EXPECT_EQ(rec.caller, UserId("u1"));
  EXPECT_EQ(rec.callee, UserId("u2"));
  EXPECT_EQ(rec.direction, Direction::kOutgoing);
  EXPECT_EQ(rec.antenna, AntennaId("A17"));
  EXPECT_EQ(rec.duration_s, 0);
}

TEST(ParseCdrLineTest, SelfCallRejected) {
  const auto parsed = parse_cdr_line("u1,u1,2015-08-03T09:15:00Z,O,A17", registry_with_a17());
  ASSERT_TRUE(std::holds_alternative<RejectReason>(parsed));
  EXPECT_EQ(std::get<RejectReason>(parsed), RejectReason::kSelfCall);
}

TEST(ParseCdrLineTest, BadDirectionCounted) {
  const IngestResult result = parse_text("u1,u2,2015-08-03T09:15:00Z,X,A17\n", registry_with_a17());
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.report.rejected(RejectReason::kBadDirection), 1u);
  EXPECT_EQ(result.report.rejected_total(), 1u);
}

TEST(ParseCdrLineTest, EachReasonCode) {
  const auto r = registry_with_a17();
  auto reason = [&](std::string_view line) {
    const auto parsed = parse_cdr_line(line, r);
    EXPECT_TRUE(std::holds_alternative<RejectReason>(parsed)) << line;
    return std::get<RejectReason>(parsed);
  };
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,O"), RejectReason::kBadFieldCount);
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,O,A17,1,2"), RejectReason::kBadFieldCount);
  EXPECT_EQ(reason(",u2,2015-08-03T09:15:00Z,O,A17"), RejectReason::kBadFieldCount);
  EXPECT_EQ(reason(""), RejectReason::kBadFieldCount);
  EXPECT_EQ(reason("u1,u2,2015-08-03,O,A17"), RejectReason::kBadTimestamp);
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,o,A17"), RejectReason::kBadDirection);
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,O,A17,-3"), RejectReason::kBadDuration);
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,O,A17,1.5"), RejectReason::kBadDuration);
  EXPECT_EQ(reason("u1,u2,2015-08-03T09:15:00Z,O,B99"), RejectReason::kUnknownAntenna);
}

TEST(ParseCdrLineTest, OptionalDurationAndCrlf) {
  const auto parsed = parse_cdr_line("u1,u2,2015-08-03T09:15:00Z,I,A18,42\r", registry_with_a17());
  ASSERT_TRUE(std::holds_alternative<CallRecord>(parsed));
  EXPECT_EQ(std::get<CallRecord>(parsed).duration_s, 42);
  EXPECT_EQ(std::get<CallRecord>(parsed).direction, Direction::kIncoming);
}

TEST(ParseCdrStreamTest, ThreeLineFixtureWithUnknownAntenna) {
  const std::string text =
      "u1,u2,2015-08-03T09:15:00Z,O,A17\n"
      "u2,u1,2015-08-03T09:15:00Z,I,A18\n"
      "u3,u1,2015-08-04T21:00:00Z,O,Z404\n";
  const IngestResult result = parse_text(text, registry_with_a17());
  EXPECT_EQ(result.report.accepted(), 2u);
  EXPECT_EQ(result.report.rejected(RejectReason::kUnknownAntenna), 1u);
  EXPECT_EQ(result.report.lines_seen(), 3u);
  EXPECT_EQ(result.report.distinct_users(), 2u);
  EXPECT_EQ(result.report.distinct_antennas(), 2u);
  ASSERT_TRUE(result.report.time_span().has_value());
}

TEST(ParseCdrStreamTest, UnreadableSourceIsFatal) {
  std::istringstream in("u1,u2,2015-08-03T09:15:00Z,O,A17\n");
  in.setstate(std::ios::badbit);
  EXPECT_THROW(parse_cdr_stream(in, registry_with_a17()), IoError);
  EXPECT_THROW(parse_cdr_file("/nonexistent/cdr.csv", registry_with_a17()), IoError);
}

// Corrupts a fraction of otherwise valid lines with random edits.
std::vector<std::string> fuzzed_lines(std::uint64_t seed, std::size_t n, double corrupt) {
  Rng rng(seed);
  const auto records = testing::random_records(rng, n, 30, 6);
  std::vector<std::string> lines;
  for (const auto& rec : records) {
    std::ostringstream os;
    write_cdr_line(os, rec);
    std::string line = os.str();
    line.pop_back();
    if (rng.bernoulli(corrupt)) {
      switch (rng.uniform_index(5)) {
        case 0: line.erase(line.find(',')); break;
        case 1: line[rng.uniform_index(line.size())] = '#'; break;
        case 2: line += ",x"; break;
        case 3: line.replace(line.rfind(",A"), 2, ",Q"); break;
        default: line.clear(); break;
      }
    }
    lines.push_back(line);
  }
  return lines;
}

std::string join(const std::vector<std::string>& lines, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) out += lines[i] + "\n";
  return out;
}

TEST(ParseCdrStreamTest, PropertyConservationOnFuzzedInput) {
  const auto r = testing::small_registry();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto lines = fuzzed_lines(seed, 500, 0.2);
    const IngestResult result = parse_text(join(lines, 0, lines.size()), r);
    EXPECT_EQ(result.report.accepted() + result.report.rejected_total(), lines.size());
    EXPECT_EQ(result.report.lines_seen(), lines.size());
    EXPECT_EQ(result.records.size(), result.report.accepted());
    // Oracle: accepted lines counted one at a time.
    std::size_t ok = 0;
    for (const auto& line : lines) {
      ok += std::holds_alternative<CallRecord>(parse_cdr_line(line, r)) ? 1 : 0;
    }
    EXPECT_EQ(result.report.accepted(), ok);
  }
}

TEST(ParseCdrStreamTest, PropertyIdempotentAndWriteRoundTrip) {
  const auto r = testing::small_registry();
  const auto lines = fuzzed_lines(3, 400, 0.1);
  const std::string text = join(lines, 0, lines.size());
  const IngestResult a = parse_text(text, r);
  const IngestResult b = parse_text(text, r);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.report.to_json().dump(), b.report.to_json().dump());

  std::ostringstream written;
  for (const auto& rec : a.records) write_cdr_line(written, rec);
  const IngestResult c = parse_text(written.str(), r);
  EXPECT_EQ(c.records, a.records);
  EXPECT_EQ(c.report.rejected_total(), 0u);
}

TEST(ParseCdrStreamTest, PropertyShardEquivalence) {
  const auto r = testing::small_registry();
  const auto lines = fuzzed_lines(9, 600, 0.1);
  const IngestResult whole = parse_text(join(lines, 0, lines.size()), r);
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> cuts = {0, lines.size()};
    for (int c = 0; c < 3; ++c) cuts.push_back(rng.uniform_index(lines.size() + 1));
    std::sort(cuts.begin(), cuts.end());
    IngestResult merged;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      IngestResult part = parse_text(join(lines, cuts[i], cuts[i + 1]), r);
      merged.records.insert(merged.records.end(), part.records.begin(), part.records.end());
      merged.report.merge(part.report);
    }
    EXPECT_EQ(merged.records, whole.records);
    EXPECT_EQ(merged.report, whole.report);
  }
}

TEST(IngestReportTest, JsonListsEveryReason) {
  IngestReport report;
  report.record_rejected(RejectReason::kSelfCall);
  const auto doc = report.to_json();
  EXPECT_EQ(doc["accepted"], 0);
  for (const char* key : {"bad_field_count", "bad_timestamp", "bad_direction", "bad_duration",
                          "self_call", "unknown_antenna"}) {
    EXPECT_TRUE(doc["rejected_by_reason"].contains(key)) << key;
  }
  EXPECT_EQ(doc["rejected_by_reason"]["self_call"], 1);
  EXPECT_TRUE(doc["time_span"].is_null());
}

}  // namespace
}  // namespace cdrisk
