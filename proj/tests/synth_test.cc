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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cdrisk/ingest.h"
#include "cdrisk/synth.h"
#include "cdrisk/time_bucket.h"
#include "test_util.h"

namespace cdrisk {
namespace {

SynthConfig small_config(std::uint64_t seed = 42) {
  SynthConfig c;
  c.seed = seed;
  c.n_users = 300;
  c.mean_calls_per_user_per_period = 40;
  return c;
}

TEST(SynthTest, SameSeedIsByteIdentical) {
  const auto window = StudyWindow::default_window();
  const SynthCorpus a = generate(small_config(), window);
  const SynthCorpus b = generate(small_config(), window);
  EXPECT_EQ(a.cdr_csv(), b.cdr_csv());
  EXPECT_EQ(a.registry_csv(), b.registry_csv());
  EXPECT_EQ(a.zone_csv(), b.zone_csv());
  EXPECT_EQ(a.ground_truth_json(), b.ground_truth_json());
  const SynthCorpus c = generate(small_config(43), window);
  EXPECT_NE(a.cdr_csv(), c.cdr_csv());
}

TEST(SynthTest, NoMigrationMeansLabelsAreCurrentResidency) {
  SynthConfig config = small_config();
  config.migrant_fraction = 0.0;
  const SynthCorpus corpus = generate(config, StudyWindow::default_window());
  EXPECT_EQ(corpus.truth.migrant_count(), 0u);
  for (const auto& [id, u] : corpus.truth.users) {
    EXPECT_EQ(u.lived_in_endemic_t0, corpus.zone_members.contains(u.t1_home)) << id.str();
  }
}

TEST(SynthTest, MigrantCountForFiveHundredUsers) {
  SynthConfig config;
  config.n_users = 500;
  config.p_home_call = 0.9;
  config.migrant_fraction = 0.2;
  config.mean_calls_per_user_per_period = 20;
  const SynthCorpus corpus = generate(config, StudyWindow::default_window());
  const std::size_t migrants = corpus.truth.migrant_count();
  EXPECT_GE(migrants, 80u);
  EXPECT_LE(migrants, 120u);
  for (const auto& [id, u] : corpus.truth.users) {
    if (!u.migrant) continue;
    EXPECT_TRUE(corpus.zone_members.contains(u.t0_home));
    EXPECT_FALSE(corpus.zone_members.contains(u.t1_home));
  }
}

TEST(SynthTest, EveryRecordPassesIngestion) {
  const SynthCorpus corpus = generate(small_config(), StudyWindow::default_window());
  std::istringstream in(corpus.cdr_csv());
  const IngestResult result = parse_cdr_stream(in, corpus.registry);
  EXPECT_EQ(result.report.rejected_total(), 0u);
  EXPECT_EQ(result.records, corpus.records);
}

TEST(SynthTest, RecordsCoverBothPeriodsAndFloorWeeknights) {
  const auto window = StudyWindow::default_window();
  const SynthConfig config = small_config();
  const SynthCorpus corpus = generate(config, window);
  std::map<UserId, std::array<std::uint64_t, 2>> weeknight;
  for (const auto& r : corpus.records) {
    const bool in_t0 = window.t0().contains(r.timestamp);
    const bool in_t1 = window.t1().contains(r.timestamp);
    ASSERT_TRUE(in_t0 || in_t1);
    if (classify_time(r.timestamp) == TimeBucket::kWeeknight) ++weeknight[r.caller][in_t0 ? 0 : 1];
  }
  ASSERT_EQ(weeknight.size(), config.n_users);
  for (const auto& [id, counts] : weeknight) {
    EXPECT_GE(counts[0], config.min_weeknight_calls) << id.str();
    EXPECT_GE(counts[1], config.min_weeknight_calls) << id.str();
  }
}

TEST(SynthTest, PropertyLabelBalanceWithinThreeSigma) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    SynthConfig config;
    config.seed = seed;
    config.n_users = 1000;
    config.mean_calls_per_user_per_period = 5;
    config.min_weeknight_calls = 1;
    const SynthCorpus corpus = generate(config, StudyWindow::default_window());
    // P(label) = migrant_fraction + (1 - migrant_fraction) * |zone| / |antennas|.
    const double zone_share =
        static_cast<double>(corpus.zone_members.size()) / config.n_antennas;
    const double p = config.migrant_fraction + (1 - config.migrant_fraction) * zone_share;
    const double n = config.n_users;
    std::size_t positives = 0;
    for (const auto& [id, u] : corpus.truth.users) positives += u.lived_in_endemic_t0 ? 1 : 0;
    EXPECT_LE(std::abs(positives - n * p), 3 * std::sqrt(n * p * (1 - p))) << "seed " << seed;
  }
}

TEST(SynthTest, ZoneIsWesternColumnsAndHopsAreChebyshev) {
  const SynthCorpus corpus = generate(small_config(), StudyWindow::default_window());
  EXPECT_EQ(corpus.zone_members.size(), 5u);
  EXPECT_EQ(corpus.registry.size(), 25u);
  for (const auto& [id, hops] : corpus.hops_from_zone) {
    EXPECT_EQ(hops == 0, corpus.zone_members.contains(id)) << id.str();
  }
  int max_hops = 0;
  for (const auto& [id, hops] : corpus.hops_from_zone) max_hops = std::max(max_hops, hops);
  EXPECT_EQ(max_hops, 4);
}

TEST(SynthTest, GroundTruthJsonRoundTrips) {
  const SynthCorpus corpus = generate(small_config(), StudyWindow::default_window());
  const GroundTruth back = GroundTruth::from_json(nlohmann::json::parse(corpus.ground_truth_json()));
  EXPECT_EQ(back.users, corpus.truth.users);
}

TEST(SynthTest, WritesFourFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "cdrisk_synth_test";
  std::filesystem::remove_all(dir);
  const SynthCorpus corpus = generate(small_config(), StudyWindow::default_window());
  write_corpus(corpus, dir.string());
  for (const char* name : {"cdr.csv", "antennas.csv", "zone.csv", "ground_truth.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  std::ifstream in(dir / "antennas.csv");
  EXPECT_EQ(load_registry(in).size(), corpus.registry.size());
  std::filesystem::remove_all(dir);
}

TEST(SynthTest, InvalidConfigsRejected) {
  const auto window = StudyWindow::default_window();
  SynthConfig c;
  c.n_users = 0;
  EXPECT_THROW(generate(c, window), ValidationError);
  c = SynthConfig{};
  c.n_antennas = 1;
  EXPECT_THROW(generate(c, window), ValidationError);
  c = SynthConfig{};
  c.p_home_call = 1.5;
  EXPECT_THROW(generate(c, window), ValidationError);
  c = SynthConfig{};
  c.endemic_antenna_fraction = 0.0;
  EXPECT_THROW(generate(c, window), ValidationError);
  c = SynthConfig{};
  c.endemic_antenna_fraction = 1.0;
  EXPECT_THROW(generate(c, window), ValidationError);
}

}  // namespace
}  // namespace cdrisk
