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

// Command-line front end: one subcommand per pipeline stage.
//
//   cdrisk synth    --seed 42 --out-dir corpus/
//   cdrisk riskmap  --records corpus/cdr.csv --antennas corpus/antennas.csv
//                   --zone corpus/zone.csv --beta 0.15 --min-pop 50 --out-dir out/
//   cdrisk pipeline --records ... --antennas ... --zone ... --out-dir out/
//
// Every subcommand prints a one-line JSON summary on success. Exit status is
// 0 on success, 1 on validation or I/O errors (with a JSON error object on
// stderr) and 2 on usage errors. `--config FILE` reads flat key=value lines;
// explicit flags override them.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdrisk/pipeline.h"
#include "cdrisk/types.h"
#include "json.hpp"

namespace {

using cdrisk::pipeline::InputPaths;

struct Options {
  InputPaths inputs;
  std::string out_dir = ".";
  std::string t0_start = "2014-01-01T00:00:00Z";
  std::string t0_end = "2015-08-01T00:00:00Z";
  std::string t1_start = "2015-08-01T00:00:00Z";
  std::string t1_end = "2016-01-01T00:00:00Z";
  std::string window_start;
  std::string window_end;
  cdrisk::RiskMapParameters riskmap;
  cdrisk::pipeline::TrainConfig train;
  cdrisk::SynthConfig synth;
  std::string dataset;
  std::string model;
};

void add_inputs(CLI::App* cmd, Options& o, bool with_zone) {
  cmd->add_option("--records", o.inputs.records, "CDR CSV file")->required();
  cmd->add_option("--antennas", o.inputs.antennas, "Antenna registry CSV")->required();
  if (with_zone) {
    cmd->add_option("--zone", o.inputs.zone, "Endemic zone file (CSV or JSON array)")
        ->required();
    cmd->add_option("--zone-name", o.inputs.zone_name, "Label of the endemic zone");
  }
}

void add_out_dir(CLI::App* cmd, Options& o) {
  cmd->add_option("--out-dir", o.out_dir, "Directory for output artifacts");
}

void add_window(CLI::App* cmd, Options& o) {
  cmd->add_option("--t0-start", o.t0_start, "Start of the past window (inclusive)");
  cmd->add_option("--t0-end", o.t0_end, "End of the past window (exclusive)");
  cmd->add_option("--t1-start", o.t1_start, "Start of the present window (inclusive)");
  cmd->add_option("--t1-end", o.t1_end, "End of the present window (exclusive)");
}

void add_riskmap(CLI::App* cmd, Options& o) {
  cmd->add_option("--beta", o.riskmap.beta, "Keep antennas with V/N strictly above beta");
  cmd->add_option("--min-pop", o.riskmap.min_population,
                  "Keep antennas with strictly more residents than this (m_v)");
  cmd->add_option("--color-max", o.riskmap.color_max,
                  "Vulnerable fraction rendered fully red");
  cmd->add_option("--radius-k", o.riskmap.radius_k, "Marker radius is k * sqrt(residents)");
  cmd->add_flag("--count-zone-residents-as-vulnerable",
                o.riskmap.count_zone_residents_as_vulnerable,
                "Count endemic residents as vulnerable by definition");
}

void add_train(CLI::App* cmd, Options& o) {
  cmd->add_option("--lambda", o.train.lambda, "L2 penalty strength");
  cmd->add_option("--seed", o.train.seed, "Seed for the train/test split");
  cmd->add_option("--train-fraction", o.train.train_fraction, "Training share of rows");
  cmd->add_flag("--tune", o.train.tune,
                "Pick lambda from 1e-4..1e1 on a 5% validation slice of the training rows");
  cmd->add_option("--tolerance", o.train.tolerance, "Gradient max-norm stopping tolerance");
  cmd->add_option("--max-iters", o.train.max_iters, "Iteration cap");
}

void add_synth(CLI::App* cmd, Options& o) {
  auto& s = o.synth;
  cmd->add_option("--seed", s.seed, "Generator seed");
  cmd->add_option("--n-users", s.n_users);
  cmd->add_option("--n-antennas", s.n_antennas);
  cmd->add_option("--endemic-fraction", s.endemic_antenna_fraction,
                  "Share of antennas in the endemic zone");
  cmd->add_option("--p-home-call", s.p_home_call);
  cmd->add_option("--migrant-fraction", s.migrant_fraction);
  cmd->add_option("--mean-calls", s.mean_calls_per_user_per_period,
                  "Mean calls per user per period");
  cmd->add_option("--min-weeknight-calls", s.min_weeknight_calls);
  cmd->add_option("--tie-strength-endemic", s.tie_strength_endemic);
  cmd->add_option("--neighbor-tie-strength", s.neighbor_tie_strength);
  cmd->add_option("--tie-decay", s.tie_decay_per_hop);
  cmd->add_option("--contacts-per-user", s.contacts_per_user);
  cmd->add_option("--mean-duration", s.mean_duration_s);
  cmd->add_option("--zone-name", s.zone_name);
}

cdrisk::Timestamp timestamp_or_throw(const std::string& flag, const std::string& text) {
  const auto t = cdrisk::parse_timestamp(text);
  if (!t) {
    throw cdrisk::ValidationError(flag + " must be YYYY-MM-DDThh:mm:ssZ, got '" + text + "'");
  }
  return *t;
}

cdrisk::StudyWindow window_of(const Options& o) {
  return cdrisk::StudyWindow(timestamp_or_throw("--t0-start", o.t0_start),
                             timestamp_or_throw("--t0-end", o.t0_end),
                             timestamp_or_throw("--t1-start", o.t1_start),
                             timestamp_or_throw("--t1-end", o.t1_end));
}

// Turns `--config FILE` into `--key=value` arguments placed before the
// explicit ones, so that explicit flags win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> explicit_args;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      explicit_args.push_back(args[i]);
    }
  }
  if (config_path.empty() || explicit_args.empty()) return explicit_args;

  std::ifstream in(config_path);
  if (!in) throw cdrisk::IoError("cannot open config file " + config_path);
  std::vector<std::string> out = {explicit_args.front()};  // subcommand name
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw cdrisk::ValidationError("config line without '=': " + line);
    }
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), explicit_args.begin() + 1, explicit_args.end());
  return out;
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Chagas risk maps and migration prediction from call detail records"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic CDR corpus with ground truth");
  add_synth(synth, o);
  add_window(synth, o);
  add_out_dir(synth, o);

  auto* ingest = app.add_subcommand("ingest", "Validate a CDR file and report data quality");
  add_inputs(ingest, o, false);
  add_out_dir(ingest, o);

  auto* graph = app.add_subcommand("graph", "Build the communication graph and dump its edges");
  add_inputs(graph, o, false);
  add_out_dir(graph, o);

  auto* homes = app.add_subcommand("homes", "Infer home antennas from weeknight activity");
  add_inputs(homes, o, false);
  homes->add_option("--window-start", o.window_start, "Only count records from here on");
  homes->add_option("--window-end", o.window_end, "Only count records before this");
  add_out_dir(homes, o);

  auto* riskmap = app.add_subcommand("riskmap", "Per-antenna vulnerability map");
  add_inputs(riskmap, o, true);
  add_riskmap(riskmap, o);
  add_out_dir(riskmap, o);

  auto* features = app.add_subcommand("features", "Build the migration dataset (T1 features, T0 labels)");
  add_inputs(features, o, true);
  add_window(features, o);
  add_out_dir(features, o);

  auto* train = app.add_subcommand("train", "Train the logistic regression model");
  train->add_option("--dataset", o.dataset, "Dataset CSV from `features`")->required();
  add_train(train, o);
  add_out_dir(train, o);

  auto* evaluate = app.add_subcommand("evaluate", "Score the model and the naive Bayes baseline");
  evaluate->add_option("--dataset", o.dataset, "Dataset CSV from `features`")->required();
  evaluate->add_option("--model", o.model, "Model JSON from `train`")->required();
  add_out_dir(evaluate, o);

  auto* pipeline = app.add_subcommand("pipeline", "Risk map and migration stages end to end");
  add_inputs(pipeline, o, true);
  add_riskmap(pipeline, o);
  add_window(pipeline, o);
  add_train(pipeline, o);
  add_out_dir(pipeline, o);

  std::vector<std::string> args;
  try {
    std::vector<std::string> raw(argv + 1, argv + argc);
    args = expand_config(raw);
  } catch (const cdrisk::IoError& e) {
    print_error("io", e.what());
    return 1;
  } catch (const cdrisk::ValidationError& e) {
    print_error("validation", e.what());
    return 2;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    nlohmann::ordered_json summary;
    if (*synth) {
      summary = cdrisk::pipeline::run_synth(o.synth, window_of(o), o.out_dir);
    } else if (*ingest) {
      summary = cdrisk::pipeline::run_ingest(o.inputs, o.out_dir);
    } else if (*graph) {
      summary = cdrisk::pipeline::run_graph(o.inputs, o.out_dir);
    } else if (*homes) {
      std::optional<cdrisk::TimeRange> window;
      if (!o.window_start.empty() || !o.window_end.empty()) {
        if (o.window_start.empty() || o.window_end.empty()) {
          throw cdrisk::ValidationError("--window-start and --window-end go together");
        }
        window = cdrisk::TimeRange{timestamp_or_throw("--window-start", o.window_start),
                                   timestamp_or_throw("--window-end", o.window_end)};
      }
      summary = cdrisk::pipeline::run_homes(o.inputs, window, o.out_dir);
    } else if (*riskmap) {
      summary = cdrisk::pipeline::run_riskmap(o.inputs, o.riskmap, o.out_dir);
    } else if (*features) {
      summary = cdrisk::pipeline::run_features(o.inputs, window_of(o), o.out_dir);
    } else if (*train) {
      summary = cdrisk::pipeline::run_train(o.dataset, o.train, o.out_dir);
    } else if (*evaluate) {
      summary = cdrisk::pipeline::run_evaluate(o.dataset, o.model, o.out_dir);
    } else if (*pipeline) {
      summary = cdrisk::pipeline::run_pipeline(o.inputs, o.riskmap, window_of(o), o.train,
                                               o.out_dir);
    }
    std::cout << summary.dump() << std::endl;
  } catch (const cdrisk::IoError& e) {
    print_error("io", e.what());
    return 1;
  } catch (const cdrisk::ValidationError& e) {
    print_error("validation", e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    print_error("io", e.what());
    return 1;
  }
  return 0;
}
