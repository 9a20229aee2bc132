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

#include "cdrisk/logreg.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "cdrisk/types.h"

namespace cdrisk {
namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

Standardizer Standardizer::fit(const Dataset& data, std::span<const std::size_t> rows) {
  const std::size_t d = data.dims();
  Standardizer s;
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  if (rows.empty()) return s;
  for (std::size_t r : rows) {
    const auto row = data.row(r);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= static_cast<double>(rows.size());
  std::vector<double> var(d, 0.0);
  for (std::size_t r : rows) {
    const auto row = data.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = row[j] - s.mean[j];
      var[j] += dev * dev;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(rows.size()));
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

void Standardizer::apply(std::span<const double> raw, std::span<double> out) const {
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = (raw[j] - mean[j]) / scale[j];
}

LogisticObjective::LogisticObjective(std::vector<double> features, std::vector<int> labels,
                                     std::size_t dims, double lambda)
    : x_(std::move(features)), labels_(std::move(labels)), dims_(dims), lambda_(lambda) {
  if (x_.size() != labels_.size() * dims_) {
    throw ValidationError("objective: feature matrix does not match label count");
  }
}

double LogisticObjective::value(std::span<const double> params) const {
  const std::span<const double> w = params.first(dims_);
  const double b = params[dims_];
  double loss = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const double z = dot(w, std::span<const double>(x_.data() + i * dims_, dims_)) + b;
    loss += softplus(z) - (labels_[i] == 1 ? z : 0.0);
  }
  const double n = static_cast<double>(std::max<std::size_t>(labels_.size(), 1));
  return loss / n + 0.5 * lambda_ * dot(w, w);
}

double LogisticObjective::value_and_gradient(std::span<const double> params,
                                             std::span<double> grad) const {
  const std::span<const double> w = params.first(dims_);
  const double b = params[dims_];
  std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::span<const double> xi(x_.data() + i * dims_, dims_);
    const double z = dot(w, xi) + b;
    const double y = labels_[i] == 1 ? 1.0 : 0.0;
    loss += softplus(z) - y * z;
    const double residual = sigmoid(z) - y;
    for (std::size_t j = 0; j < dims_; ++j) grad[j] += residual * xi[j];
    grad[dims_] += residual;
  }
  const double n = static_cast<double>(std::max<std::size_t>(labels_.size(), 1));
  for (double& g : grad) g /= n;
  for (std::size_t j = 0; j < dims_; ++j) grad[j] += lambda_ * w[j];
  return loss / n + 0.5 * lambda_ * dot(w, w);
}

double LogisticObjective::change(std::span<const double> from, std::span<const double> to) const {
  const std::size_t d = dims_;
  double total = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::span<const double> xi(x_.data() + i * d, d);
    double z = from[d], dz = to[d] - from[d];
    for (std::size_t j = 0; j < d; ++j) {
      z += from[j] * xi[j];
      dz += (to[j] - from[j]) * xi[j];
    }
    // softplus(z + dz) - softplus(z) = log1p(sigmoid(z) * expm1(dz))
    const double dsoft = std::fabs(dz) <= 1.0 ? std::log1p(sigmoid(z) * std::expm1(dz))
                                              : softplus(z + dz) - softplus(z);
    total += dsoft - (labels_[i] == 1 ? dz : 0.0);
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j < d; ++j) penalty += (to[j] - from[j]) * (to[j] + from[j]);
  const double n = static_cast<double>(std::max<std::size_t>(labels_.size(), 1));
  return total / n + 0.5 * lambda_ * penalty;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kLineSearchStalled:
      return "line_search_stalled";
  }
  return "unknown";
}

double LogRegModel::predict_proba(std::span<const double> row) const {
  if (row.size() != weights.size()) {
    throw ValidationError(fmt::format("row has {} features, model expects {}", row.size(),
                                      weights.size()));
  }
  double z = intercept;
  for (std::size_t j = 0; j < row.size(); ++j) {
    z += weights[j] * (row[j] - standardizer.mean[j]) / standardizer.scale[j];
  }
  return std::clamp(sigmoid(z), kProbabilityFloor, 1.0 - kProbabilityFloor);
}

std::vector<double> LogRegModel::predict_proba(const Dataset& data,
                                               std::span<const std::size_t> rows) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(predict_proba(data.row(r)));
  return out;
}

nlohmann::ordered_json LogRegModel::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kModelSchemaVersion;
  j["columns"] = columns;
  j["standardization"] = {{"mean", standardizer.mean}, {"scale", standardizer.scale}};
  j["weights"] = weights;
  j["intercept"] = intercept;
  j["lambda"] = lambda;
  j["convergence"] = {{"termination", to_string(convergence.termination)},
                      {"iterations", convergence.iterations},
                      {"gradient_max_norm", convergence.gradient_max_norm},
                      {"final_loss", convergence.final_loss},
                      {"warning", convergence.warning()}};
  return j;
}

LogRegModel LogRegModel::from_json(const nlohmann::json& doc) {
  LogRegModel m;
  try {
    if (doc.at("schema_version").get<std::string>() != kModelSchemaVersion) {
      throw ValidationError("unsupported model schema version");
    }
    m.columns = doc.at("columns").get<std::vector<std::string>>();
    m.standardizer.mean = doc.at("standardization").at("mean").get<std::vector<double>>();
    m.standardizer.scale = doc.at("standardization").at("scale").get<std::vector<double>>();
    m.weights = doc.at("weights").get<std::vector<double>>();
    m.intercept = doc.at("intercept").get<double>();
    m.lambda = doc.at("lambda").get<double>();
    const auto& c = doc.at("convergence");
    const std::string term = c.at("termination").get<std::string>();
    m.convergence.termination = term == "converged"        ? Termination::kConverged
                                : term == "max_iterations" ? Termination::kMaxIterations
                                                           : Termination::kLineSearchStalled;
    m.convergence.iterations = c.at("iterations").get<int>();
    m.convergence.gradient_max_norm = c.at("gradient_max_norm").get<double>();
    m.convergence.final_loss = c.at("final_loss").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed model JSON: {}", e.what()));
  }
  const std::size_t d = m.columns.size();
  if (m.weights.size() != d || m.standardizer.mean.size() != d ||
      m.standardizer.scale.size() != d) {
    throw ValidationError("model JSON: vector lengths do not match the column count");
  }
  return m;
}

LogRegModel train_logreg(const Dataset& data, std::span<const std::size_t> train_rows,
                         const LogRegOptions& options) {
  if (!(options.lambda > 0.0)) throw ValidationError("lambda must be positive");
  const std::size_t d = data.dims();

  LogRegModel model;
  model.columns = data.columns();
  model.lambda = options.lambda;
  model.standardizer = Standardizer::fit(data, train_rows);

  std::vector<double> x(train_rows.size() * d);
  std::vector<int> y;
  y.reserve(train_rows.size());
  for (std::size_t i = 0; i < train_rows.size(); ++i) {
    const auto raw = data.row(train_rows[i]);
    for (double v : raw) {
      if (!std::isfinite(v)) throw ValidationError("non-finite feature value");
    }
    model.standardizer.apply(raw, std::span<double>(x.data() + i * d, d));
    y.push_back(data.label(train_rows[i]));
  }
  const LogisticObjective objective(std::move(x), std::move(y), d, options.lambda);

  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;
  std::vector<double> params(d + 1, 0.0), grad(d + 1), trial(d + 1), trial_grad(d + 1);
  double loss = objective.value_and_gradient(params, grad);
  double step = 1.0;
  ConvergenceReport& report = model.convergence;
  report.termination = Termination::kMaxIterations;

  int it = 0;
  for (; it < options.max_iters; ++it) {
    report.loss_history.push_back(loss);
    if (max_abs(grad) <= options.tolerance) {
      report.termination = Termination::kConverged;
      break;
    }
    const double grad_sq = dot(grad, grad);
    double delta = 0.0;
    bool accepted = false;
    while (step >= kMinStep) {
      for (std::size_t j = 0; j <= d; ++j) trial[j] = params[j] - step * grad[j];
      delta = objective.change(params, trial);
      if (delta <= -kArmijo * step * grad_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      report.termination = Termination::kLineSearchStalled;
      break;
    }
    objective.value_and_gradient(trial, trial_grad);
    // Barzilai-Borwein guess for the next trial step.
    double ss = 0.0, sy = 0.0;
    for (std::size_t j = 0; j <= d; ++j) {
      const double s = trial[j] - params[j];
      ss += s * s;
      sy += s * (trial_grad[j] - grad[j]);
    }
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(step * 2.0, 1e10);
    params.swap(trial);
    grad.swap(trial_grad);
    loss += delta;
  }
  report.iterations = it;
  report.gradient_max_norm = max_abs(grad);
  report.final_loss = loss;
  if (report.termination != Termination::kConverged) report.loss_history.push_back(loss);

  model.weights.assign(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(d));
  model.intercept = params[d];
  return model;
}

std::vector<double> default_lambda_grid() { return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}; }

TuningResult tune_logreg(const Dataset& data, std::span<const std::size_t> train_rows,
                         std::span<const double> grid, std::uint64_t seed,
                         double validation_fraction, const LogRegOptions& options) {
  TuningResult result;
  result.chosen_lambda = options.lambda;

  std::vector<int> labels;
  labels.reserve(train_rows.size());
  for (std::size_t r : train_rows) labels.push_back(data.label(r));
  std::vector<std::size_t> fit_rows, validation_rows;
  try {
    const SplitAssignment split = stratified_split(labels, 1.0 - validation_fraction, seed);
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      (split.assignment[i] == Split::kTrain ? fit_rows : validation_rows)
          .push_back(train_rows[i]);
    }
  } catch (const ValidationError&) {
    validation_rows.clear();
  }

  std::vector<int> validation_labels;
  for (std::size_t r : validation_rows) validation_labels.push_back(data.label(r));
  const bool usable =
      std::count(validation_labels.begin(), validation_labels.end(), 1) > 0 &&
      std::count(validation_labels.begin(), validation_labels.end(), 0) > 0;

  if (usable) {
    const LambdaTrial* best = nullptr;
    for (double lambda : grid) {
      LogRegOptions trial_options = options;
      trial_options.lambda = lambda;
      const LogRegModel m = train_logreg(data, fit_rows, trial_options);
      const std::vector<double> p = m.predict_proba(data, validation_rows);
      LambdaTrial trial;
      trial.lambda = lambda;
      trial.validation_auc = roc_auc(validation_labels, p);
      for (std::size_t i = 0; i < p.size(); ++i) {
        trial.validation_loss -= validation_labels[i] == 1 ? std::log(p[i]) : std::log1p(-p[i]);
      }
      trial.validation_loss /= static_cast<double>(p.size());
      result.trials.push_back(trial);
    }
    for (const LambdaTrial& t : result.trials) {
      if (best == nullptr) {
        best = &t;
        continue;
      }
      const double a = t.validation_auc.value_or(0.0);
      const double b = best->validation_auc.value_or(0.0);
      if (a > b || (a == b && t.validation_loss < best->validation_loss) ||
          (a == b && t.validation_loss == best->validation_loss && t.lambda > best->lambda)) {
        best = &t;
      }
    }
    if (best != nullptr) result.chosen_lambda = best->lambda;
  }

  LogRegOptions final_options = options;
  final_options.lambda = result.chosen_lambda;
  result.model = train_logreg(data, train_rows, final_options);
  return result;
}

}  // namespace cdrisk
