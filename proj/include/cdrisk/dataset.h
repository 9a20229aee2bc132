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

#ifndef CDRISK_DATASET_H_
#define CDRISK_DATASET_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace cdrisk {

// Dense labelled feature matrix, row-major, one row per user.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  // Throws ValidationError on a width mismatch, a non-finite value or a label
  // other than 0/1.
  void add_row(std::string id, std::span<const double> values, int label);

  std::size_t size() const { return labels_.size(); }
  std::size_t dims() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<int>& labels() const { return labels_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * columns_.size(), columns_.size()};
  }
  int label(std::size_t i) const { return labels_[i]; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

inline constexpr std::string_view kDatasetSchemaVersion = "cdrisk.features.v1";

// First line `#schema=<version>`, then the header `user_id,<columns...>,label`,
// then one row per user. Integral values are written without decimals, others
// with 6 decimal places.
void write_dataset_csv(std::ostream& out, const Dataset& dataset);
// Accepts what write_dataset_csv emits; '#' lines are skipped.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_file(const std::string& path);

enum class Split : std::uint8_t { kTrain = 0, kTest = 1 };

struct SplitAssignment {
  std::vector<Split> assignment;  // one per dataset row

  std::vector<std::size_t> train_rows() const;
  std::vector<std::size_t> test_rows() const;
};

// Stratified by label, deterministic in `seed`. The train set has
// round(train_fraction * n) rows; per-class quotas are floored and the
// leftover rows go to the classes with the largest fractional parts (ties to
// the positive class). Throws ValidationError with fewer than 2 rows or a
// single class.
SplitAssignment stratified_split(std::span<const int> labels, double train_fraction,
                                 std::uint64_t seed);

}  // namespace cdrisk

#endif  // CDRISK_DATASET_H_
