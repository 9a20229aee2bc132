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

#ifndef CDRISK_NAIVE_BAYES_H_
#define CDRISK_NAIVE_BAYES_H_

#include <array>
#include <span>
#include <vector>

#include "cdrisk/dataset.h"
#include "json.hpp"

namespace cdrisk {

// Multinomial naive Bayes over a subset of non-negative count columns.
struct MultinomialNB {
  std::vector<std::size_t> columns;                 // dataset column indices used
  double alpha = 1.0;                               // additive smoothing
  std::array<double, 2> log_prior{};                // log P(y)
  std::array<std::vector<double>, 2> log_theta;     // log P(feature | y)

  // Class log scores log P(y) + sum_j x_j log theta_yj.
  std::array<double, 2> joint_log_likelihood(std::span<const double> row) const;
  // P(y = 1 | row).
  double predict_proba(std::span<const double> row) const;
  std::vector<double> predict_proba(const Dataset& data, std::span<const std::size_t> rows) const;

  nlohmann::ordered_json to_json() const;
};

// theta_yj = (N_yj + alpha) / (N_y + alpha * |columns|), priors from class
// frequencies. Throws ValidationError on a negative value in a used column,
// alpha <= 0, or a training set lacking either class.
MultinomialNB train_mnb(const Dataset& data, std::span<const std::size_t> rows,
                        std::span<const std::size_t> columns, double alpha = 1.0);

}  // namespace cdrisk

#endif  // CDRISK_NAIVE_BAYES_H_
