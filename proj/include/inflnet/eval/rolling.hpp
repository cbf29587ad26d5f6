#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inflnet/bench/fadl.hpp"
#include "inflnet/bench/ucsv.hpp"
#include "inflnet/data/dataset.hpp"
#include "inflnet/eval/forecast_run.hpp"
#include "inflnet/models/network.hpp"
#include "inflnet/nn/train.hpp"

namespace inflnet::eval {

// Fills in N and M from the dataset's z and w blocks.
models::NetworkSpec bind_dimensions(models::NetworkSpec spec, const data::PreparedDataset& ds);

struct TrainedModel {
  models::Network net;
  Vector params;
  std::vector<double> loss_history;
  Index last_target = 0;  // last target row used in training
};

// Fits a fresh network (Glorot init from `seed`) on every pair (x_s, y_{s+h})
// with s + h <= last_target.
TrainedModel train_through(const models::NetworkSpec& spec, const data::PreparedDataset& ds, Index horizon,
                           Index last_target, const nn::TrainConfig& train, std::uint64_t seed);

// Forecasts for target rows [first_target, end_target). Forecast j is made at
// origin first_target + j - h. Parameters are re-fit at j = 0, R, 2R, ... on
// data up to that origin and frozen in between.
struct RollingConfig {
  Index refit_every = 48;
  nn::TrainConfig train;
  std::optional<Index> first_target;  // default: start of the test window
  std::optional<Index> end_target;    // default: end of the test window
  // Compute only schedule positions [only_begin, only_end); refit anchors are
  // unchanged. only_end < 0 means the whole schedule.
  Index only_begin = 0;
  Index only_end = -1;
};

class PartialRunError : public TrainingError {
 public:
  PartialRunError(const std::string& what, ForecastRun partial, std::string last_good)
      : TrainingError(what), partial_(std::move(partial)), last_good_(std::move(last_good)) {}
  const ForecastRun& partial() const { return partial_; }
  const std::string& last_good_date() const { return last_good_; }

 private:
  ForecastRun partial_;
  std::string last_good_;
};

ForecastRun rolling_forecast(const models::NetworkSpec& spec, const data::PreparedDataset& ds, Index horizon,
                             std::uint64_t seed, const RollingConfig& cfg = {});

enum class BenchmarkKind { Ar1, Ucsv, Fadl };
std::string_view benchmark_name(BenchmarkKind kind);  // "ar1", "ucsv", "fadl"
std::optional<BenchmarkKind> parse_benchmark(std::string_view name);

struct BenchmarkConfig {
  bench::UcsvConfig ucsv;
  bench::FadlConfig fadl;
  std::optional<Index> first_target;
  std::optional<Index> end_target;
};

// Benchmarks are re-estimated at every origin on data up to that origin.
// UC-SV fits are shared across horizons because its forecast does not depend
// on h. One run per horizon, in the order given.
std::vector<ForecastRun> benchmark_forecasts(BenchmarkKind kind, const data::PreparedDataset& ds,
                                             const std::vector<Index>& horizons, const BenchmarkConfig& cfg = {},
                                             std::size_t workers = 1);

}  // namespace inflnet::eval
