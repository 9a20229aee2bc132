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
#include <numeric>

#include <gtest/gtest.h>

#include "cdrisk/naive_bayes.h"
#include "cdrisk/random.h"
#include "cdrisk/types.h"

namespace cdrisk {
namespace {

const std::vector<std::size_t> kBoth = {0, 1};

std::vector<std::size_t> all_rows(const Dataset& d) {
  std::vector<std::size_t> rows(d.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

TEST(MultinomialNBTest, FourRowFixture) {
  Dataset d({"c0", "c1"});
  d.add_row("p1", std::vector{2.0, 0.0}, 1);
  d.add_row("p2", std::vector{1.0, 1.0}, 1);
  d.add_row("n1", std::vector{0.0, 3.0}, 0);
  d.add_row("n2", std::vector{1.0, 1.0}, 0);
  const MultinomialNB m = train_mnb(d, all_rows(d), kBoth);
  // Class 1 totals (3, 1): theta = (4/6, 2/6). Class 0 totals (1, 4): theta = (2/7, 5/7).
  EXPECT_NEAR(std::exp(m.log_theta[1][0]), 4.0 / 6, 1e-15);
  EXPECT_NEAR(std::exp(m.log_theta[1][1]), 2.0 / 6, 1e-15);
  EXPECT_NEAR(std::exp(m.log_theta[0][0]), 2.0 / 7, 1e-15);
  EXPECT_NEAR(std::exp(m.log_theta[0][1]), 5.0 / 7, 1e-15);
  EXPECT_NEAR(std::exp(m.log_prior[1]), 0.5, 1e-15);
  // Row (1, 2): class 1 ~ (2/3)(1/3)^2 = 2/27, class 0 ~ (2/7)(5/7)^2 = 50/343.
  const double expected = (2.0 / 27) / (2.0 / 27 + 50.0 / 343);
  EXPECT_NEAR(m.predict_proba(std::vector{1.0, 2.0}), expected, 1e-12);
}

TEST(MultinomialNBTest, SymmetricClassesGiveHalf) {
  Dataset d({"a", "b", "c"});
  d.add_row("p", std::vector{2.0, 2.0, 2.0}, 1);
  d.add_row("n", std::vector{2.0, 2.0, 2.0}, 0);
  const MultinomialNB m = train_mnb(d, all_rows(d), std::vector<std::size_t>{0, 1, 2});
  EXPECT_DOUBLE_EQ(m.predict_proba(std::vector{1.0, 1.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(m.predict_proba(std::vector{7.0, 0.0, 3.0}), 0.5);
}

TEST(MultinomialNBTest, PropertySingleRowPerClassPicksCloserClass) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(4), n(4), x(4);
    for (auto* v : {&p, &n, &x}) {
      for (auto& e : *v) e = static_cast<double>(rng.uniform_index(6));
    }
    Dataset d({"a", "b", "c", "e"});
    d.add_row("p", p, 1);
    d.add_row("n", n, 0);
    const std::vector<std::size_t> cols = {0, 1, 2, 3};
    const MultinomialNB m = train_mnb(d, all_rows(d), cols);
    // Independent log-likelihoods from the smoothed single rows.
    auto loglik = [&](const std::vector<double>& row) {
      double total = 0;
      for (double v : row) total += v;
      double s = 0;
      for (std::size_t j = 0; j < 4; ++j) s += x[j] * std::log((row[j] + 1) / (total + 4));
      return s;
    };
    const double lp = loglik(p), ln = loglik(n);
    const double prob = m.predict_proba(x);
    if (lp > ln + 1e-9) {
      EXPECT_GT(prob, 0.5);
    }
    if (ln > lp + 1e-9) {
      EXPECT_LT(prob, 0.5);
    }
    EXPECT_NEAR(prob, 1 / (1 + std::exp(ln - lp)), 1e-9);
  }
}

TEST(MultinomialNBTest, IgnoresUnusedColumns) {
  Dataset d({"count", "diameter_km"});
  d.add_row("p", std::vector{3.0, -5.0}, 1);
  d.add_row("n", std::vector{1.0, 2.5}, 0);
  const MultinomialNB m = train_mnb(d, all_rows(d), std::vector<std::size_t>{0});
  EXPECT_EQ(m.columns.size(), 1u);
  EXPECT_EQ(m.predict_proba(std::vector{1.0, -100.0}), m.predict_proba(std::vector{1.0, 100.0}));
}

TEST(MultinomialNBTest, Errors) {
  Dataset d({"a", "b"});
  d.add_row("p", std::vector{1.0, -1.0}, 1);
  d.add_row("n", std::vector{1.0, 1.0}, 0);
  EXPECT_THROW(train_mnb(d, all_rows(d), kBoth), ValidationError);
  EXPECT_THROW(train_mnb(d, all_rows(d), std::vector<std::size_t>{0}, 0.0), ValidationError);
  EXPECT_THROW(train_mnb(d, std::vector<std::size_t>{1}, std::vector<std::size_t>{0}),
               ValidationError);
}

TEST(MultinomialNBTest, ExtremeScoresStayFinite) {
  Dataset d({"a", "b"});
  d.add_row("p", std::vector{100.0, 0.0}, 1);
  d.add_row("n", std::vector{0.0, 100.0}, 0);
  const MultinomialNB m = train_mnb(d, all_rows(d), kBoth);
  const double hi = m.predict_proba(std::vector{1e5, 0.0});
  const double lo = m.predict_proba(std::vector{0.0, 1e5});
  EXPECT_TRUE(std::isfinite(hi));
  EXPECT_TRUE(std::isfinite(lo));
  EXPECT_EQ(hi, 1.0);
  EXPECT_EQ(lo, 0.0);
}

}  // namespace
}  // namespace cdrisk
