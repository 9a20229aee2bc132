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

#include "cdrisk/dataset.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "cdrisk/random.h"
#include "cdrisk/types.h"
#include "csv_util.h"

namespace cdrisk {

void Dataset::add_row(std::string id, std::span<const double> values, int label) {
  if (values.size() != columns_.size()) {
    throw ValidationError(fmt::format("row {} has {} values, expected {}", id,
                                      values.size(), columns_.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError(fmt::format("row {} has a non-finite value", id));
  }
  if (label != 0 && label != 1) {
    throw ValidationError(fmt::format("row {} has label {}, expected 0 or 1", id, label));
  }
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
  labels_.push_back(label);
}

namespace {

std::string format_value(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return fmt::format("{:.0f}", v);
  return fmt::format("{:.6f}", v);
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
  out << "#schema=" << kDatasetSchemaVersion << '\n';
  out << "user_id";
  for (const std::string& c : dataset.columns()) out << ',' << c;
  out << ",label\n";
  std::string line;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    line = dataset.ids()[i];
    for (double v : dataset.row(i)) {
      line += ',';
      line += format_value(v);
    }
    line += ',';
    line += dataset.label(i) == 1 ? '1' : '0';
    line += '\n';
    out << line;
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Dataset dataset;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = internal::strip_cr(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = internal::split_fields(view);
    if (!have_header) {
      if (fields.size() < 2 || fields.front() != "user_id" || fields.back() != "label") {
        throw ValidationError("dataset header must be user_id,<features...>,label");
      }
      dataset = Dataset(std::vector<std::string>(fields.begin() + 1, fields.end() - 1));
      have_header = true;
      continue;
    }
    if (fields.size() != dataset.dims() + 2) {
      throw ValidationError(fmt::format("dataset line {}: expected {} fields, got {}",
                                        line_no, dataset.dims() + 2, fields.size()));
    }
    values.clear();
    for (std::size_t c = 1; c + 1 < fields.size(); ++c) {
      const auto v = internal::parse_double(fields[c]);
      if (!v) throw ValidationError(fmt::format("dataset line {}: bad number", line_no));
      values.push_back(*v);
    }
    const auto label = internal::parse_int(fields.back());
    if (!label) throw ValidationError(fmt::format("dataset line {}: bad label", line_no));
    dataset.add_row(std::string(fields.front()), values, static_cast<int>(*label));
  }
  if (!have_header) throw ValidationError("dataset has no header");
  return dataset;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open dataset {}", path));
  return read_dataset_csv(in);
}

std::vector<std::size_t> SplitAssignment::train_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == Split::kTrain) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> SplitAssignment::test_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == Split::kTest) out.push_back(i);
  }
  return out;
}

SplitAssignment stratified_split(std::span<const int> labels, double train_fraction,
                                 std::uint64_t seed) {
  if (labels.size() < 2) throw ValidationError("split needs at least 2 rows");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train_fraction must lie in (0, 1)");
  }
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] == 1 ? 1 : 0].push_back(i);
  if (by_class[0].empty() || by_class[1].empty()) {
    throw ValidationError("split needs both classes present");
  }

  const auto total_train =
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(labels.size())));
  std::array<std::size_t, 2> quota{};
  std::array<double, 2> remainder{};
  for (int c = 0; c < 2; ++c) {
    const double exact = train_fraction * static_cast<double>(by_class[c].size());
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
  }
  std::size_t assigned = quota[0] + quota[1];
  while (assigned < total_train) {
    const int c = remainder[1] >= remainder[0] ? 1 : 0;
    if (quota[c] < by_class[c].size()) {
      ++quota[c];
    } else {
      ++quota[1 - c];
    }
    remainder[c] = -1.0;
    ++assigned;
  }

  Rng rng(seed);
  SplitAssignment out;
  out.assignment.assign(labels.size(), Split::kTest);
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t> idx = by_class[c];
    rng.shuffle(idx);
    for (std::size_t k = 0; k < quota[c]; ++k) out.assignment[idx[k]] = Split::kTrain;
  }
  return out;
}

}  // namespace cdrisk
