#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inflnet/common.hpp"
#include "inflnet/data/calendar.hpp"

namespace inflnet::eval {

// Forecasts of y_{t+h} made at origin t, indexed by the target date t+h.
struct ForecastRun {
  std::string model;
  Index horizon = 1;
  std::optional<std::uint64_t> seed;  // empty for ensembles and benchmarks
  std::vector<data::YearMonth> dates;
  Vector forecasts;
  Vector realized;

  Index size() const { return forecasts.size(); }
  Vector errors() const { return realized - forecasts; }
  void validate() const;
  ForecastRun slice(Index begin, Index end) const;
};

// CSV with header date,horizon,forecast,realized.
std::string serialize_run(const ForecastRun& run);
ForecastRun parse_run(const std::string& text, std::string model = {});
void write_run(const std::string& path, const ForecastRun& run);
ForecastRun read_run(const std::string& path, std::string model = {});

void check_aligned(const ForecastRun& a, const ForecastRun& b);

// Pointwise mean over runs with identical dates and horizon.
ForecastRun ensemble(const std::vector<ForecastRun>& runs, std::string model = {});

enum class Loss { Rmse, Mae };
double loss_value(const ForecastRun& run, Loss loss);
double rmse(const Eigen::Ref<const Vector>& errors);

// Candidate loss over benchmark loss.
double loss_ratio(const ForecastRun& candidate, const ForecastRun& benchmark, Loss loss = Loss::Rmse);

// d_t = L(e_first,t) - L(e_second,t) with L the squared (or absolute) error.
// Positive values favor the second forecast.
struct LossDifferential {
  Vector values;
  Index horizon = 1;
  Index size() const { return values.size(); }
};

LossDifferential loss_differential(const ForecastRun& first, const ForecastRun& second, Loss loss = Loss::Rmse);

}  // namespace inflnet::eval
