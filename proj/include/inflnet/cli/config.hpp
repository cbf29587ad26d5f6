#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "inflnet/bench/fadl.hpp"
#include "inflnet/bench/ucsv.hpp"
#include "inflnet/data/dataset.hpp"
#include "inflnet/eval/forecast_run.hpp"
#include "inflnet/eval/grid_search.hpp"
#include "inflnet/kv_config.hpp"
#include "inflnet/models/reference.hpp"

namespace inflnet::cli {

// Everything a subcommand needs, resolved from defaults, the config file and
// command-line overrides (in increasing precedence).
struct RunConfig {
  std::string data;  // raw FRED-MD style CSV
  std::string output = "out";
  data::PrepareOptions prepare;
  KeyValueConfig series_overrides;  // tcode.<name> / group.<name>

  std::vector<Index> horizons{1, 3, 6, 12, 24};
  Index ensemble_size = 1400;  // K
  std::uint64_t base_seed = 0;
  Index refit_every = 48;
  std::size_t workers = 1;
  double max_failure_share = 0.01;

  // Explicit per-model settings; kinds missing here fall back to a saved
  // grid-search optimum, then to the reference configuration.
  std::map<models::ModelKind, models::NetworkSpec> model_specs;
  std::map<models::ModelKind, nn::TrainConfig> model_training;

  bench::UcsvConfig ucsv;
  bench::FadlConfig fadl;

  Index grid_repetitions = 140;
  eval::StageOneGrid stage_one;
  eval::StageTwoGrid stage_two;

  std::vector<std::string> evaluate_models{"ff_cpi", "ff_pool", "lstm_pool", "lstm_all", "ff_lstm", "ucsv", "fadl"};
  std::string benchmark = "ar1";
  eval::Loss loss = eval::Loss::Rmse;
  Index fluctuation_window = 0;  // 0: about 30% of the evaluation sample

  double shock_sd = 3.0;
  bool last_lag_only = false;
  std::vector<std::string> importance_variables;
  Index importance_members = 0;  // 0: ensemble_size

  Index memory_candidates = 10;

  void validate() const;
};

KeyValueConfig default_entries();

// `entries` is the merged key-value view (defaults < file < flags).
RunConfig resolve(const KeyValueConfig& entries);

// The fully resolved configuration; resolve(to_entries(c)) reproduces c.
KeyValueConfig to_entries(const RunConfig& config);

// "epochs=400 batch=max lr=0.001"
std::string train_to_string(const nn::TrainConfig& train);
nn::TrainConfig parse_train(const std::string& text);

}  // namespace inflnet::cli
