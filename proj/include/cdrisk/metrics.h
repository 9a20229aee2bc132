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

#ifndef CDRISK_METRICS_H_
#define CDRISK_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>

#include "json.hpp"

namespace cdrisk {

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Undefined metrics stay nullopt and serialize as null, never as 0.
struct Metrics {
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::optional<double> auc;
  std::optional<double> precision;
  std::optional<double> recall;
  ConfusionMatrix confusion;
  double threshold = 0.5;

  nlohmann::ordered_json to_json() const;
};

// Rows scoring >= threshold are predicted positive.
ConfusionMatrix confusion_at(std::span<const int> labels, std::span<const double> scores,
                             double threshold);

// Precision, recall and F1 are undefined when there are no positive labels;
// precision is also undefined when nothing is predicted positive. F1 is 0
// whenever recall is 0.
Metrics metrics_from_confusion(const ConfusionMatrix& cm);

// Mann-Whitney form of the ROC area with midranks for tied scores; equals the
// trapezoidal area under the empirical ROC curve. nullopt unless both classes
// are present.
std::optional<double> roc_auc(std::span<const int> labels, std::span<const double> scores);

Metrics evaluate_scores(std::span<const int> labels, std::span<const double> scores,
                        double threshold = 0.5);

}  // namespace cdrisk

#endif  // CDRISK_METRICS_H_
