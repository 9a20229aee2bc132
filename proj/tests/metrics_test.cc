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

#include <gtest/gtest.h>

#include "cdrisk/metrics.h"
#include "cdrisk/random.h"
#include "oracles.h"

namespace cdrisk {
namespace {

TEST(MetricsTest, ConfusionFixture) {
  const Metrics m = metrics_from_confusion(ConfusionMatrix{8, 2, 2, 8});
  EXPECT_DOUBLE_EQ(*m.precision, 0.8);
  EXPECT_DOUBLE_EQ(*m.recall, 0.8);
  EXPECT_DOUBLE_EQ(*m.f1, 0.8);
  EXPECT_DOUBLE_EQ(*m.accuracy, 0.8);
}

TEST(MetricsTest, ConfusionAtThreshold) {
  const std::vector<int> labels = {1, 1, 0, 0, 1};
  const std::vector<double> scores = {0.5, 0.2, 0.7, 0.1, 0.9};
  EXPECT_EQ(confusion_at(labels, scores, 0.5), (ConfusionMatrix{2, 1, 1, 1}));
}

TEST(MetricsTest, PerfectAndReversedPredictions) {
  const std::vector<int> labels = {0, 0, 1, 1, 0, 1};
  const std::vector<double> perfect = {0.1, 0.2, 0.9, 0.8, 0.3, 0.7};
  const Metrics m = evaluate_scores(labels, perfect);
  EXPECT_EQ(*m.f1, 1.0);
  EXPECT_EQ(*m.accuracy, 1.0);
  EXPECT_EQ(*m.auc, 1.0);
  EXPECT_EQ(*m.precision, 1.0);
  EXPECT_EQ(*m.recall, 1.0);
  std::vector<double> reversed;
  for (double s : perfect) reversed.push_back(1 - s);
  EXPECT_EQ(*roc_auc(labels, reversed), 0.0);
}

TEST(MetricsTest, AllTiedScoresGiveHalf) {
  EXPECT_DOUBLE_EQ(*roc_auc(std::vector{0, 1, 0, 1}, std::vector{0.3, 0.3, 0.3, 0.3}), 0.5);
}

TEST(MetricsTest, PropertyAucMatchesPairCounting) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(30);
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.bernoulli(0.5);
      scores[i] = static_cast<double>(rng.uniform_index(8)) / 8;  // forces ties
    }
    labels[0] = 1;
    labels[1] = 0;
    const auto auc = roc_auc(labels, scores);
    ASSERT_TRUE(auc.has_value());
    EXPECT_NEAR(*auc, oracle::pairwise_auc(labels, scores), 1e-12);
  }
}

TEST(MetricsTest, PropertyAucInvariantUnderMonotoneTransform) {
  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 10 + rng.uniform_index(50);
    std::vector<int> labels(n);
    std::vector<double> scores(n), transformed(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.bernoulli(0.4);
      scores[i] = rng.uniform01() * 4 - 2;
      transformed[i] = std::exp(3 * scores[i]) + 7;
    }
    labels[0] = 1;
    labels[1] = 0;
    EXPECT_DOUBLE_EQ(*roc_auc(labels, scores), *roc_auc(labels, transformed));
  }
}

TEST(MetricsTest, UndefinedWithoutPositives) {
  const std::vector<int> labels = {0, 0, 0};
  const std::vector<double> scores = {0.9, 0.1, 0.2};
  const Metrics m = evaluate_scores(labels, scores);
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_FALSE(m.recall.has_value());
  EXPECT_FALSE(m.f1.has_value());
  EXPECT_FALSE(m.auc.has_value());
  ASSERT_TRUE(m.accuracy.has_value());
  EXPECT_NEAR(*m.accuracy, 2.0 / 3, 1e-15);
  const auto j = m.to_json();
  EXPECT_TRUE(j["precision"].is_null());
  EXPECT_TRUE(j["auc"].is_null());
  EXPECT_EQ(j["confusion_matrix"]["fp"], 1);
}

TEST(MetricsTest, NothingPredictedPositive) {
  const Metrics m = metrics_from_confusion(ConfusionMatrix{0, 0, 4, 6});
  EXPECT_FALSE(m.precision.has_value());
  EXPECT_EQ(*m.recall, 0.0);
  EXPECT_EQ(*m.f1, 0.0);
}

TEST(MetricsTest, PropertyF1IsHarmonicMean) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ConfusionMatrix cm{1 + rng.uniform_index(50), 1 + rng.uniform_index(50),
                             rng.uniform_index(50), rng.uniform_index(50)};
    const Metrics m = metrics_from_confusion(cm);
    const double p = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    const double r = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    EXPECT_NEAR(*m.precision, p, 1e-15);
    EXPECT_NEAR(*m.recall, r, 1e-15);
    EXPECT_NEAR(*m.f1, 2 * p * r / (p + r), 1e-12);
  }
}

}  // namespace
}  // namespace cdrisk
