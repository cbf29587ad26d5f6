#include "inflnet/eval/grid_search.hpp"

#include "inflnet/eval/executor.hpp"

namespace inflnet::eval {

GridScore score_candidate(const GridCandidate& candidate, const data::PreparedDataset& ds, const GridConfig& cfg) {
  if (cfg.repetitions < 1) throw ValidationError("grid search needs at least one repetition");
  if (cfg.horizons.empty()) throw ValidationError("grid search needs at least one horizon");
  const Index first = ds.splits.train_end;
  const Index end = ds.splits.validation_ends[2];
  GridScore out;
  out.candidate = candidate;

  RollingConfig rolling;
  rolling.refit_every = cfg.refit_every;
  rolling.train = candidate.train;
  rolling.first_target = first;
  rolling.end_target = end;

  const auto H = cfg.horizons.size();
  const auto K = static_cast<std::size_t>(cfg.repetitions);
  std::vector<ForecastRun> runs(H * K);
  parallel_for_or_throw(H * K, cfg.workers, [&](std::size_t job) {
    const std::size_t h = job / K;
    const std::size_t k = job % K;
    runs[job] = rolling_forecast(candidate.spec, ds, cfg.horizons[h], cfg.base_seed + k, rolling);
  });
  for (std::size_t h = 0; h < H; ++h) {
    const std::vector<ForecastRun> members(runs.begin() + static_cast<std::ptrdiff_t>(h * K),
                                           runs.begin() + static_cast<std::ptrdiff_t>((h + 1) * K));
    const auto ens = ensemble(members);
    const Vector e = ens.errors();
    for (std::size_t w = 0; w < 3; ++w) {
      out.window_rmse[w] += rmse(e.head(ds.splits.validation_ends[w] - first)) / static_cast<double>(H);
    }
  }
  out.score = (out.window_rmse[0] + out.window_rmse[1] + out.window_rmse[2]) / 3.0;
  return out;
}

GridResult grid_search(const std::vector<GridCandidate>& candidates, const data::PreparedDataset& ds,
                       const GridConfig& cfg) {
  if (candidates.empty()) throw ValidationError("grid search needs at least one candidate");
  GridResult result;
  for (const auto& c : candidates) {
    result.scores.push_back(score_candidate(c, ds, cfg));
    if (result.scores.back().score < result.scores[result.best].score) result.best = result.scores.size() - 1;
  }
  return result;
}

std::vector<GridCandidate> stage_one_candidates(models::ModelKind kind, const StageOneGrid& grid,
                                                const HandOff& handoff, const nn::TrainConfig& train) {
  using models::ModelKind;
  std::vector<GridCandidate> out;
  auto push = [&](models::NetworkSpec s) { out.push_back({s, train}); };
  switch (kind) {
    case ModelKind::FfCpi:
    case ModelKind::FfPool:
      for (Index L : grid.lags)
        for (Index n : grid.nodes)
          for (Index Q : grid.ff_layers) {
            models::NetworkSpec s;
            s.kind = kind;
            s.lags = L;
            s.nodes = n;
            s.layers = Q;
            push(s);
          }
      break;
    case ModelKind::LstmPool:
    case ModelKind::LstmAll: {
      if (!handoff.ff_pool) throw ValidationError("LSTM search needs the FF_POOL optimum for the node count");
      for (Index L : grid.lags)
        for (Index Q : grid.lstm_layers)
          for (Index p : grid.states) {
            models::NetworkSpec s;
            s.kind = kind;
            s.lags = L;
            s.nodes = handoff.ff_pool->nodes;
            s.layers = Q;
            s.state = p;
            push(s);
          }
      break;
    }
    case ModelKind::FfLstm: {
      if (!handoff.ff_cpi || !handoff.lstm_pool) {
        throw ValidationError("FF_LSTM needs the FF_CPI and LSTM_POOL optima");
      }
      models::NetworkSpec s;
      s.kind = ModelKind::FfLstm;
      s.lags = 0;
      s.lags_w = handoff.ff_cpi->lags;
      s.lags_z = handoff.lstm_pool->lags;
      s.nodes = handoff.lstm_pool->nodes;
      s.layers = handoff.lstm_pool->layers;
      s.state = handoff.lstm_pool->state;
      push(s);
      break;
    }
  }
  if (out.empty()) throw ValidationError("stage-one grid is empty");
  return out;
}

std::vector<GridCandidate> stage_two_candidates(const models::NetworkSpec& spec, const StageTwoGrid& grid,
                                                const nn::TrainConfig& base) {
  std::vector<GridCandidate> out;
  for (Index e : grid.epochs)
    for (Index b : grid.batch_sizes) {
      nn::TrainConfig t = base;
      t.epochs = e;
      t.batch_size = b;
      out.push_back({spec, t});
    }
  if (out.empty()) throw ValidationError("stage-two grid is empty");
  return out;
}

}  // namespace inflnet::eval
