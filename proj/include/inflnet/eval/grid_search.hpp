#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "inflnet/data/dataset.hpp"
#include "inflnet/eval/rolling.hpp"

namespace inflnet::eval {

struct GridCandidate {
  models::NetworkSpec spec;
  nn::TrainConfig train;
};

struct GridConfig {
  std::vector<Index> horizons{1, 3, 6, 12, 24};
  Index repetitions = 140;  // ensemble members per candidate; seeds base_seed + k for every candidate
  std::uint64_t base_seed = 0;
  Index refit_every = 48;
  std::size_t workers = 1;
};

struct GridScore {
  GridCandidate candidate;
  // RMSE of the ensemble over [train_end, validation_ends[w]) averaged over horizons.
  std::array<double, 3> window_rmse{};
  double score = 0.0;  // mean of window_rmse
};

struct GridResult {
  std::vector<GridScore> scores;
  std::size_t best = 0;
  const GridScore& winner() const { return scores.at(best); }
};

// Scores one candidate: rolling forecasts over the whole validation sample
// (re-fit every refit_every months), averaged across repetitions, then RMSE
// over each of the three nested validation windows.
GridScore score_candidate(const GridCandidate& candidate, const data::PreparedDataset& ds, const GridConfig& cfg);

// Lowest score wins; ties go to the earlier candidate.
GridResult grid_search(const std::vector<GridCandidate>& candidates, const data::PreparedDataset& ds,
                       const GridConfig& cfg);

struct StageOneGrid {
  std::vector<Index> lags{6, 12, 24, 48};
  std::vector<Index> nodes{16, 32, 64, 128};
  std::vector<Index> ff_layers{1, 2, 3, 4};
  std::vector<Index> lstm_layers{3, 4};
  std::vector<Index> states{2, 4, 6, 8};
};

struct StageTwoGrid {
  std::vector<Index> epochs{200, 400, 600};
  std::vector<Index> batch_sizes{128, nn::kFullBatch};
};

// Optima carried between models: FF nodes fix n for the LSTM search, and
// FF_CPI / LSTM_POOL fix every architecture choice of FF_LSTM.
struct HandOff {
  std::optional<models::NetworkSpec> ff_cpi;
  std::optional<models::NetworkSpec> ff_pool;
  std::optional<models::NetworkSpec> lstm_pool;
};

// Stage-one architectures for `kind`, trained with `train`.
std::vector<GridCandidate> stage_one_candidates(models::ModelKind kind, const StageOneGrid& grid,
                                                const HandOff& handoff, const nn::TrainConfig& train);

// Stage-two variations of a frozen architecture.
std::vector<GridCandidate> stage_two_candidates(const models::NetworkSpec& spec, const StageTwoGrid& grid,
                                                const nn::TrainConfig& base);

}  // namespace inflnet::eval
