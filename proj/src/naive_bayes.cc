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

#include "cdrisk/naive_bayes.h"

#include <cmath>

#include <fmt/format.h>

#include "cdrisk/types.h"

namespace cdrisk {

std::array<double, 2> MultinomialNB::joint_log_likelihood(std::span<const double> row) const {
  std::array<double, 2> out = log_prior;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      out[c] += row[columns[k]] * log_theta[c][k];
    }
  }
  return out;
}

double MultinomialNB::predict_proba(std::span<const double> row) const {
  const auto jll = joint_log_likelihood(row);
  // Two-class softmax, written to stay finite for large score gaps.
  const double diff = jll[0] - jll[1];
  if (diff >= 0) {
    const double e = std::exp(-diff);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(diff));
}

std::vector<double> MultinomialNB::predict_proba(const Dataset& data,
                                                 std::span<const std::size_t> rows) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(predict_proba(data.row(r)));
  return out;
}

nlohmann::ordered_json MultinomialNB::to_json() const {
  nlohmann::ordered_json j;
  j["columns"] = columns;
  j["alpha"] = alpha;
  j["log_prior"] = log_prior;
  j["log_theta"] = {log_theta[0], log_theta[1]};
  return j;
}

MultinomialNB train_mnb(const Dataset& data, std::span<const std::size_t> rows,
                        std::span<const std::size_t> columns, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("naive Bayes smoothing must be positive");
  MultinomialNB model;
  model.columns.assign(columns.begin(), columns.end());
  model.alpha = alpha;
  for (std::size_t c : columns) {
    if (c >= data.dims()) throw ValidationError("naive Bayes column out of range");
  }

  std::array<std::vector<double>, 2> totals{std::vector<double>(columns.size(), 0.0),
                                            std::vector<double>(columns.size(), 0.0)};
  std::array<std::size_t, 2> class_rows{};
  for (std::size_t r : rows) {
    const auto row = data.row(r);
    const int y = data.label(r);
    ++class_rows[y];
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const double v = row[columns[k]];
      if (v < 0.0) {
        throw ValidationError(fmt::format("naive Bayes: negative value in column {} of row {}",
                                          data.columns()[columns[k]], data.ids()[r]));
      }
      totals[y][k] += v;
    }
  }
  if (class_rows[0] == 0 || class_rows[1] == 0) {
    throw ValidationError("naive Bayes needs both classes in the training rows");
  }
  const double n = static_cast<double>(rows.size());
  for (int c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(class_rows[c]) / n);
    double sum = 0.0;
    for (double t : totals[c]) sum += t;
    const double denom = sum + alpha * static_cast<double>(columns.size());
    model.log_theta[c].resize(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      model.log_theta[c][k] = std::log((totals[c][k] + alpha) / denom);
    }
  }
  return model;
}

}  // namespace cdrisk
