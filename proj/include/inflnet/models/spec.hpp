#pragma once

#include <string>
#include <string_view>

#include "inflnet/common.hpp"
#include "inflnet/data/supervised.hpp"

namespace inflnet::models {

enum class ModelKind { FfCpi, FfPool, LstmPool, LstmAll, FfLstm };

std::string_view kind_name(ModelKind kind);  // "ff_cpi", "ff_pool", ...
ModelKind parse_kind(std::string_view name);
bool has_lstm(ModelKind kind);

// Architecture hyperparameters. `lags` drives every kind except FfLstm,
// which uses `lags_w` for the CPI block fed to the dense stack and `lags_z`
// for the pool sequence fed to the LSTM.
struct NetworkSpec {
  ModelKind kind = ModelKind::FfCpi;
  Index lags = 1;
  Index lags_w = 0;
  Index lags_z = 0;
  Index nodes = 1;
  Index layers = 1;
  Index state = 0;        // LSTM memory size p
  Index pool_width = 0;   // N
  Index cpi_width = 0;    // M

  void validate() const;
  data::PredictorSpec predictors() const;
  Index input_width() const;      // flattened x_t width
  Index dense_input_width() const;
  Index lstm_input_width() const; // 0 when there is no LSTM
  Index sequence_length() const;  // 0 when there is no LSTM

  // "kind=ff_cpi lags=24 nodes=128 layers=4 state=0 N=118 M=10 ..."
  std::string to_string() const;
  static NetworkSpec parse(const std::string& text);
};

// Closed-form parameter counts.
Index param_count(const NetworkSpec& spec);

}  // namespace inflnet::models
