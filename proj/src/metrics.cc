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

#include "cdrisk/metrics.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "cdrisk/types.h"

namespace cdrisk {
namespace {

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json Metrics::to_json() const {
  nlohmann::ordered_json j;
  j["f1"] = optional_json(f1);
  j["accuracy"] = optional_json(accuracy);
  j["auc"] = optional_json(auc);
  j["precision"] = optional_json(precision);
  j["recall"] = optional_json(recall);
  j["threshold"] = threshold;
  j["confusion_matrix"] = {{"tp", confusion.tp},
                           {"fp", confusion.fp},
                           {"fn", confusion.fn},
                           {"tn", confusion.tn}};
  return j;
}

ConfusionMatrix confusion_at(std::span<const int> labels, std::span<const double> scores,
                             double threshold) {
  if (labels.size() != scores.size()) throw ValidationError("labels and scores differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] == 1;
    if (predicted && actual) {
      ++cm.tp;
    } else if (predicted) {
      ++cm.fp;
    } else if (actual) {
      ++cm.fn;
    } else {
      ++cm.tn;
    }
  }
  return cm;
}

Metrics metrics_from_confusion(const ConfusionMatrix& cm) {
  Metrics m;
  m.confusion = cm;
  const std::uint64_t n = cm.tp + cm.fp + cm.fn + cm.tn;
  if (n > 0) m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
  const std::uint64_t positives = cm.tp + cm.fn;
  if (positives == 0) return m;
  m.recall = static_cast<double>(cm.tp) / static_cast<double>(positives);
  if (cm.tp + cm.fp > 0) {
    m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  }
  // Harmonic mean of precision and recall, in counts.
  m.f1 = static_cast<double>(2 * cm.tp) / static_cast<double>(2 * cm.tp + cm.fp + cm.fn);
  return m;
}

std::optional<double> roc_auc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ValidationError("labels and scores differ in length");
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of positive midranks (1-based), accumulated in doubled units so ties
  // stay integral.
  std::uint64_t n_pos = 0;
  std::uint64_t rank_sum_x2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::uint64_t midrank_x2 = i + 1 + j;  // (i+1) + j, both 1-based ends
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        ++n_pos;
        rank_sum_x2 += midrank_x2;
      }
    }
    i = j;
  }
  const std::uint64_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double u = static_cast<double>(rank_sum_x2) / 2.0 -
                   static_cast<double>(n_pos) * static_cast<double>(n_pos + 1) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

Metrics evaluate_scores(std::span<const int> labels, std::span<const double> scores,
                        double threshold) {
  Metrics m = metrics_from_confusion(confusion_at(labels, scores, threshold));
  m.threshold = threshold;
  if (m.recall) m.auc = roc_auc(labels, scores);
  return m;
}

}  // namespace cdrisk
