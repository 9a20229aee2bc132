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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cdrisk/comm_graph.h"
#include "cdrisk/home_inference.h"
#include "cdrisk/risk_map.h"
#include "oracles.h"
#include "test_util.h"

namespace cdrisk {
namespace {

using testing::call;

std::set<UserId> ids(std::initializer_list<const char*> names) {
  std::set<UserId> out;
  for (const char* n : names) out.insert(UserId(n));
  return out;
}

TEST(TagVulnerableTest, Examples) {
  const std::vector<CallRecord> path = {
      call("u1", "u2", testing::wednesday(10), Direction::kOutgoing, "A0"),
      call("u2", "u3", testing::wednesday(11), Direction::kOutgoing, "A0"),
  };
  const CommGraph g = CommGraph::build(path);
  EXPECT_TRUE(tag_vulnerable(g, {}).vulnerable.empty());
  EXPECT_EQ(tag_vulnerable(g, ids({"u2"})).vulnerable, ids({"u1", "u3"}));
  // Residents are tagged only through another resident.
  EXPECT_EQ(tag_vulnerable(g, ids({"u1", "u2"})).vulnerable, ids({"u1", "u2", "u3"}));
  const auto t = tag_vulnerable(g, ids({"ghost"}));
  EXPECT_TRUE(t.vulnerable.empty());
  EXPECT_EQ(t.unknown_residents, 1u);
}

TEST(TagVulnerableTest, PropertyBruteForceAndMergeOrder) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n_users = 5 + static_cast<int>(rng.uniform_index(60));
    const auto records = testing::random_records(rng, 2 * n_users, n_users, 3);
    std::set<UserId> residents;
    for (int u = 0; u < n_users; ++u) {
      if (rng.bernoulli(0.2)) residents.insert(UserId("u" + std::to_string(u)));
    }
    const CommGraph g = CommGraph::build(records);
    EXPECT_EQ(tag_vulnerable(g, residents).vulnerable,
              oracle::vulnerable(oracle::edges_of(records), residents));

    const std::size_t cut = rng.uniform_index(records.size());
    const std::span<const CallRecord> all(records);
    const CommGraph a = CommGraph::build(all.subspan(0, cut));
    const CommGraph b = CommGraph::build(all.subspan(cut));
    EXPECT_EQ(tag_vulnerable(merge(a, b), residents).vulnerable,
              tag_vulnerable(merge(b, a), residents).vulnerable);
  }
}

// u1, u2 live at A0 (endemic) and call each other; u3 lives at A1 and calls
// u1; u4 lives at A1 and calls u3.
std::vector<CallRecord> four_user_fixture() {
  return {
      call("u1", "u2", testing::wednesday(22), Direction::kOutgoing, "A0", 10),
      call("u2", "u1", testing::wednesday(22), Direction::kIncoming, "A0", 10),
      call("u3", "u1", testing::wednesday(23), Direction::kOutgoing, "A1", 20),
      call("u4", "u3", testing::wednesday(23), Direction::kOutgoing, "A1", 30),
  };
}

TEST(AggregateTest, FourUserFixture) {
  const AntennaRegistry reg = testing::small_registry(3);
  const EndemicZone zone("z", {AntennaId("A0")}, reg);
  const auto records = four_user_fixture();
  const HomeAssignment homes = infer_homes(records);
  const CommGraph g = CommGraph::build(records);
  const auto stats = aggregate(homes, g, records, zone, reg);
  ASSERT_EQ(stats.size(), 3u);
  const AntennaStats& b = stats[1];
  EXPECT_EQ(b.antenna.id, AntennaId("A1"));
  EXPECT_EQ(b.residents, 2u);
  EXPECT_EQ(b.vulnerable, 1u);
  EXPECT_EQ(b.calls_out, 2u);
  EXPECT_EQ(b.calls_to_endemic, 1u);
  EXPECT_EQ(stats[0].residents, 2u);
  EXPECT_EQ(stats[0].vulnerable, 2u);
  EXPECT_EQ(stats[0].calls_out, 1u);
  EXPECT_EQ(stats[0].calls_to_endemic, 1u);
  EXPECT_EQ(stats[2], AntennaStats{reg.at(AntennaId("A2"))});

  const auto expected = oracle::antenna_stats(records, zone.members());
  for (const auto& s : stats) {
    const auto it = expected.find(s.antenna.id);
    const oracle::Stats got{s.residents, s.vulnerable, s.calls_out, s.calls_to_endemic};
    EXPECT_EQ(got, it == expected.end() ? oracle::Stats{} : it->second) << s.antenna.id.str();
  }
}

TEST(AggregateTest, ZoneResidentsFlag) {
  const AntennaRegistry reg = testing::small_registry(3);
  const EndemicZone zone("z", {AntennaId("A0")}, reg);
  std::vector<CallRecord> records = {
      call("u1", "u3", testing::wednesday(22), Direction::kOutgoing, "A0"),
      call("u3", "u4", testing::wednesday(22), Direction::kOutgoing, "A1"),
  };
  const HomeAssignment homes = infer_homes(records);
  const CommGraph g = CommGraph::build(records);
  EXPECT_EQ(aggregate(homes, g, records, zone, reg)[0].vulnerable, 0u);
  EXPECT_EQ(aggregate(homes, g, records, zone, reg, {true})[0].vulnerable, 1u);
}

TEST(AggregateTest, NoRecordsGivesZeroedAntennas) {
  const AntennaRegistry reg = testing::small_registry(4);
  const EndemicZone zone("z", {AntennaId("A0")}, reg);
  const auto stats = aggregate(HomeAssignment{}, CommGraph{}, {}, zone, reg);
  ASSERT_EQ(stats.size(), 4u);
  for (const auto& s : stats) {
    EXPECT_EQ(s.residents + s.vulnerable + s.calls_out + s.calls_to_endemic, 0u);
  }
}

TEST(AggregateTest, PropertyInvariantsOnFuzzedInput) {
  const AntennaRegistry reg = testing::small_registry(6);
  Rng rng(32);
  for (int trial = 0; trial < 25; ++trial) {
    const auto records = testing::random_records(rng, 400, 40, 6);
    std::set<AntennaId> members;
    while (members.empty()) {
      for (int a = 0; a < 6; ++a) {
        if (rng.bernoulli(0.3)) members.insert(AntennaId("A" + std::to_string(a)));
      }
    }
    const EndemicZone zone("z", members, reg);
    const HomeAssignment homes = infer_homes(records);
    const auto stats = aggregate(homes, CommGraph::build(records), records, zone, reg);
    std::uint64_t n = 0, c = 0;
    for (const auto& s : stats) {
      EXPECT_LE(s.vulnerable, s.residents);
      EXPECT_LE(s.calls_to_endemic, s.calls_out);
      n += s.residents;
      c += s.calls_out;
    }
    EXPECT_EQ(n, homes.size());
    EXPECT_EQ(c, static_cast<std::uint64_t>(std::count_if(
                     records.begin(), records.end(),
                     [](const CallRecord& r) { return r.direction == Direction::kOutgoing; })));
    const auto expected = oracle::antenna_stats(records, members);
    for (const auto& s : stats) {
      const auto it = expected.find(s.antenna.id);
      const oracle::Stats got{s.residents, s.vulnerable, s.calls_out, s.calls_to_endemic};
      EXPECT_EQ(got, it == expected.end() ? oracle::Stats{} : it->second);
    }
  }
}

TEST(OutgoingTallyTest, ShardsMergeInAnyOrder) {
  Rng rng(33);
  const auto records = testing::random_records(rng, 500, 20, 4);
  const std::set<UserId> residents = ids({"u1", "u2", "u3"});
  const OutgoingTally whole = tally_outgoing(records, residents);
  const std::span<const CallRecord> all(records);
  OutgoingTally a = tally_outgoing(all.subspan(0, 200), residents);
  OutgoingTally b = tally_outgoing(all.subspan(200), residents);
  OutgoingTally ab = a;
  ab.merge(b);
  b.merge(a);
  EXPECT_EQ(ab, whole);
  EXPECT_EQ(b, whole);
}

AntennaStats make_stats(const std::string& id, std::uint64_t n, std::uint64_t v) {
  AntennaStats s;
  s.antenna = Antenna{AntennaId(id), 0.0, 0.0};
  s.residents = n;
  s.vulnerable = v;
  return s;
}

TEST(FilterMapTest, StrictBoundaries) {
  const std::vector<AntennaStats> stats = {
      make_stats("at_beta", 100, 1),   // 0.01 exactly
      make_stats("above", 100, 2),
      make_stats("at_pop", 50, 25),    // N == m_v
      make_stats("empty", 0, 0),
  };
  const auto kept = filter_map(stats, 0.01, 50);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].antenna.id, AntennaId("above"));
  EXPECT_TRUE(filter_map(std::vector{make_stats("x", 100, 15)}, 0.15, 50).empty());
}

TEST(FilterMapTest, BetaZeroKeepsAnyVulnerable) {
  const std::vector<AntennaStats> stats = {make_stats("a", 60, 0), make_stats("b", 60, 1),
                                           make_stats("c", 50, 5)};
  const auto kept = filter_map(stats, 0.0, 50);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].antenna.id, AntennaId("b"));
}

TEST(FilterMapTest, PropertyAntitoneInBetaAndPopulation) {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AntennaStats> stats;
    for (int i = 0; i < 30; ++i) {
      const std::uint64_t n = rng.uniform_index(200);
      stats.push_back(make_stats("A" + std::to_string(i), n, n ? rng.uniform_index(n + 1) : 0));
    }
    double b1 = rng.uniform01(), b2 = rng.uniform01();
    if (b1 > b2) std::swap(b1, b2);
    std::uint64_t m1 = rng.uniform_index(150), m2 = rng.uniform_index(150);
    if (m1 > m2) std::swap(m1, m2);
    auto id_set = [](const std::vector<AntennaStats>& s) {
      std::set<AntennaId> out;
      for (const auto& x : s) out.insert(x.antenna.id);
      return out;
    };
    const auto loose = id_set(filter_map(stats, b1, m1));
    const auto tight_beta = id_set(filter_map(stats, b2, m1));
    const auto tight_pop = id_set(filter_map(stats, b1, m2));
    EXPECT_TRUE(std::includes(loose.begin(), loose.end(), tight_beta.begin(), tight_beta.end()));
    EXPECT_TRUE(std::includes(loose.begin(), loose.end(), tight_pop.begin(), tight_pop.end()));
  }
}

TEST(RampColorTest, Endpoints) {
  EXPECT_EQ(ramp_color(0.0, 0.5), "#FFFF00");
  EXPECT_EQ(ramp_color(0.5, 0.5), "#FF0000");
  EXPECT_EQ(ramp_color(0.9, 0.5), "#FF0000");
  EXPECT_EQ(ramp_color(0.25, 0.5), "#FF8000");  // 127.5 rounds up
}

TEST(GeoJsonTest, SingleAntennaValues) {
  RiskMap map;
  AntennaStats s = make_stats("A9", 100, 25);
  s.antenna.latitude = -27.5;
  s.antenna.longitude = -60.25;
  map.stats = {s};
  map.zone_name = "chaco";
  const auto doc = export_geojson(map);
  ASSERT_EQ(doc["features"].size(), 1u);
  const auto& f = doc["features"][0];
  EXPECT_EQ(f["geometry"]["coordinates"][0].get<double>(), -60.25);
  EXPECT_EQ(f["geometry"]["coordinates"][1].get<double>(), -27.5);
  EXPECT_DOUBLE_EQ(f["properties"]["marker_radius"].get<double>(), 10.0);
  const std::string text = geojson_text(map);
  EXPECT_NE(text.find("\"frac_vulnerable\": 0.250000"), std::string::npos);
  EXPECT_NE(text.find("\"marker_radius\": 10.000000"), std::string::npos);
}

TEST(GeoJsonTest, EmptyMapKeepsParameters) {
  RiskMap map;
  map.parameters.beta = 0.15;
  map.zone_name = "z";
  const auto doc = export_geojson(map);
  EXPECT_EQ(doc["type"], "FeatureCollection");
  EXPECT_TRUE(doc["features"].empty());
  EXPECT_DOUBLE_EQ(doc["risk_map"]["parameters"]["beta"].get<double>(), 0.15);
  EXPECT_EQ(doc["risk_map"]["parameters"]["min_pop"], 50);
}

TEST(GeoJsonTest, RoundTrip) {
  RiskMap map;
  Rng rng(35);
  for (int i = 0; i < 12; ++i) {
    AntennaStats s = make_stats("A" + std::to_string(i), rng.uniform_index(300), 0);
    s.vulnerable = s.residents ? rng.uniform_index(s.residents + 1) : 0;
    s.calls_out = rng.uniform_index(1000);
    s.calls_to_endemic = s.calls_out ? rng.uniform_index(s.calls_out + 1) : 0;
    s.antenna.latitude = std::round((rng.uniform01() * 10 - 30) * 1e6) / 1e6;
    s.antenna.longitude = std::round((rng.uniform01() * 10 - 65) * 1e6) / 1e6;
    map.stats.push_back(s);
  }
  map.parameters = RiskMapParameters{0.15, 40, 0.4, 2.0, true};
  map.zone_name = "chaco";
  map.metadata["note"] = "fixture";
  const RiskMap back = parse_geojson(nlohmann::json::parse(geojson_text(map)));
  EXPECT_EQ(back.stats, map.stats);
  EXPECT_EQ(back.parameters, map.parameters);
  EXPECT_EQ(back.zone_name, "chaco");
  EXPECT_EQ(back.metadata["note"], "fixture");
}

TEST(StatsCsvTest, HeaderAndFormatting) {
  AntennaStats s = make_stats("A1", 3, 1);
  s.antenna.latitude = -27.0;
  s.antenna.longitude = -62.5;
  s.calls_out = 7;
  s.calls_to_endemic = 2;
  std::ostringstream out;
  write_stats_csv(out, std::vector{s});
  EXPECT_EQ(out.str(),
            "antenna_id,lat,lon,residents,vulnerable,frac_vulnerable,calls_out,calls_to_endemic\n"
            "A1,-27.000000,-62.500000,3,1,0.333333,7,2\n");
}

}  // namespace
}  // namespace cdrisk
