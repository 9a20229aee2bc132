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

#ifndef CDRISK_LOGREG_H_
#define CDRISK_LOGREG_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdrisk/dataset.h"
#include "cdrisk/metrics.h"
#include "json.hpp"

namespace cdrisk {

// Per-column z-scoring fitted on training rows only. Constant columns get
// scale 1 so they map to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Dataset& data, std::span<const std::size_t> rows);
  void apply(std::span<const double> raw, std::span<double> out) const;
};

// Average logistic loss plus (lambda / 2) * |w|^2 over standardized rows. The
// parameter vector is [w_0 .. w_{d-1}, intercept]; the intercept is not
// penalized.
class LogisticObjective {
 public:
  LogisticObjective(std::vector<double> features, std::vector<int> labels, std::size_t dims,
                    double lambda);

  std::size_t dims() const { return dims_; }
  std::size_t rows() const { return labels_.size(); }
  double value(std::span<const double> params) const;
  // Writes the gradient into `grad` and returns the objective value.
  double value_and_gradient(std::span<const double> params, std::span<double> grad) const;
  // value(to) - value(from), summed term by term so it stays accurate when
  // the two points are close.
  double change(std::span<const double> from, std::span<const double> to) const;

 private:
  std::vector<double> x_;  // row-major, rows() x dims()
  std::vector<int> labels_;
  std::size_t dims_;
  double lambda_;
};

enum class Termination { kConverged, kMaxIterations, kLineSearchStalled };
std::string_view to_string(Termination t);

struct ConvergenceReport {
  Termination termination = Termination::kConverged;
  int iterations = 0;
  double gradient_max_norm = 0.0;
  double final_loss = 0.0;
  std::vector<double> loss_history;  // objective before each iteration, then final

  bool warning() const { return termination != Termination::kConverged; }
};

struct LogRegOptions {
  double lambda = 0.01;
  double tolerance = 1e-6;  // on the max-norm of the gradient
  int max_iters = 10000;
};

inline constexpr std::string_view kModelSchemaVersion = "cdrisk.logreg.v1";

class LogRegModel {
 public:
  std::vector<std::string> columns;
  Standardizer standardizer;
  std::vector<double> weights;  // on standardized features
  double intercept = 0.0;
  double lambda = 0.01;
  ConvergenceReport convergence;

  // sigmoid(w . standardize(row) + b), clamped to [1e-12, 1 - 1e-12].
  // Throws ValidationError on a dimension mismatch.
  double predict_proba(std::span<const double> row) const;
  std::vector<double> predict_proba(const Dataset& data,
                                    std::span<const std::size_t> rows) const;

  nlohmann::ordered_json to_json() const;
  static LogRegModel from_json(const nlohmann::json& doc);
};

inline constexpr double kProbabilityFloor = 1e-12;

// Full-batch gradient descent from zero with Barzilai-Borwein trial steps and
// Armijo backtracking, so the objective never increases. Throws
// ValidationError if lambda <= 0 or a feature is non-finite.
LogRegModel train_logreg(const Dataset& data, std::span<const std::size_t> train_rows,
                         const LogRegOptions& options = {});

struct LambdaTrial {
  double lambda = 0.0;
  std::optional<double> validation_auc;
  double validation_loss = 0.0;
};

struct TuningResult {
  LogRegModel model;  // refitted on all training rows with the chosen lambda
  double chosen_lambda = 0.0;
  std::vector<LambdaTrial> trials;
};

// 10^-4 .. 10^1.
std::vector<double> default_lambda_grid();

// Holds out a stratified `validation_fraction` of the training rows, fits one
// model per lambda on the rest and keeps the best validation AUC (ties: lower
// validation log loss, then larger lambda). Falls back to options.lambda when
// the held-out part cannot contain both classes.
TuningResult tune_logreg(const Dataset& data, std::span<const std::size_t> train_rows,
                         std::span<const double> grid, std::uint64_t seed,
                         double validation_fraction = 0.05,
                         const LogRegOptions& options = {});

}  // namespace cdrisk

#endif  // CDRISK_LOGREG_H_
