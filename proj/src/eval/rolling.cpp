#include "inflnet/eval/rolling.hpp"

#include <map>

#include "inflnet/bench/ar1.hpp"
#include "inflnet/data/supervised.hpp"
#include "inflnet/eval/executor.hpp"

namespace inflnet::eval {

models::NetworkSpec bind_dimensions(models::NetworkSpec spec, const data::PreparedDataset& ds) {
  spec.pool_width = ds.z_width();
  spec.cpi_width = ds.w_width();
  return spec;
}

TrainedModel train_through(const models::NetworkSpec& spec, const data::PreparedDataset& ds, Index horizon,
                           Index last_target, const nn::TrainConfig& train, std::uint64_t seed) {
  TrainedModel out;
  out.net = models::Network(bind_dimensions(spec, ds));
  const auto set = data::build_supervised(ds, out.net.spec().predictors(), horizon, 0, last_target - horizon);
  nn::TrainConfig cfg = train;
  cfg.seed = seed;
  auto result = nn::fit(out.net, set.inputs, set.targets, cfg);
  out.params = std::move(result.params);
  out.loss_history = std::move(result.loss_history);
  out.last_target = last_target;
  return out;
}

ForecastRun rolling_forecast(const models::NetworkSpec& spec, const data::PreparedDataset& ds, Index horizon,
                             std::uint64_t seed, const RollingConfig& cfg) {
  if (horizon < 1) throw ValidationError("forecast horizon must be at least 1");
  if (cfg.refit_every < 1) throw ValidationError("refit cadence must be at least 1");
  const Index first = cfg.first_target.value_or(ds.splits.test_begin());
  const Index end = cfg.end_target.value_or(ds.splits.test_end);
  if (first - horizon < 0 || end > ds.rows() || first >= end) {
    throw ValidationError("forecast window [" + std::to_string(first) + ", " + std::to_string(end) +
                          ") does not fit the panel at horizon " + std::to_string(horizon));
  }
  const Index P = end - first;
  const Index only_begin = std::max<Index>(cfg.only_begin, 0);
  const Index only_end = cfg.only_end < 0 ? P : std::min(cfg.only_end, P);

  const auto bound = bind_dimensions(spec, ds);
  const auto layout = data::make_layout(ds, bound.predictors());

  ForecastRun run;
  run.model = std::string(models::kind_name(spec.kind));
  run.horizon = horizon;
  run.seed = seed;
  std::vector<double> forecasts, realized;

  std::optional<TrainedModel> model;
  Index model_anchor = -1;
  for (Index j = only_begin; j < only_end; ++j) {
    const Index target = first + j;
    const Index origin = target - horizon;
    const Index anchor = (j / cfg.refit_every) * cfg.refit_every;
    if (anchor != model_anchor) {
      const Index refit_origin = first + anchor - horizon;
      try {
        model = train_through(bound, ds, horizon, refit_origin, cfg.train, seed);
      } catch (const Error& e) {
        run.forecasts = Eigen::Map<const Vector>(forecasts.data(), static_cast<Index>(forecasts.size()));
        run.realized = Eigen::Map<const Vector>(realized.data(), static_cast<Index>(realized.size()));
        const std::string last_good = run.dates.empty() ? std::string("none") : run.dates.back().to_string();
        throw PartialRunError("training failed at refit origin " + ds.dates[static_cast<std::size_t>(refit_origin)].to_string() +
                                  " (" + e.what() + "); last good forecast date: " + last_good,
                              run, last_good);
      }
      model_anchor = anchor;
    }
    const Vector x = data::input_row(ds.matrix, layout, origin);
    const double y = model->net.predict(model->params, x.transpose())(0);
    run.dates.push_back(ds.dates[static_cast<std::size_t>(target)]);
    forecasts.push_back(ds.target_scaling.from_model(y));
    realized.push_back(ds.target(target));
  }
  run.forecasts = Eigen::Map<const Vector>(forecasts.data(), static_cast<Index>(forecasts.size()));
  run.realized = Eigen::Map<const Vector>(realized.data(), static_cast<Index>(realized.size()));
  return run;
}

std::string_view benchmark_name(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::Ar1: return "ar1";
    case BenchmarkKind::Ucsv: return "ucsv";
    case BenchmarkKind::Fadl: return "fadl";
  }
  return "?";
}

std::optional<BenchmarkKind> parse_benchmark(std::string_view name) {
  for (auto k : {BenchmarkKind::Ar1, BenchmarkKind::Ucsv, BenchmarkKind::Fadl}) {
    if (benchmark_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<ForecastRun> benchmark_forecasts(BenchmarkKind kind, const data::PreparedDataset& ds,
                                             const std::vector<Index>& horizons, const BenchmarkConfig& cfg,
                                             std::size_t workers) {
  const Index first = cfg.first_target.value_or(ds.splits.test_begin());
  const Index end = cfg.end_target.value_or(ds.splits.test_end);
  if (first >= end || end > ds.rows()) throw ValidationError("benchmark forecast window is empty or out of range");
  for (Index h : horizons) {
    if (h < 1 || first - h < 0) throw ValidationError("horizon " + std::to_string(h) + " does not fit the panel");
  }

  // One job per (horizon, target), except UC-SV which needs one fit per origin.
  std::map<Index, double> ucsv_by_origin;
  if (kind == BenchmarkKind::Ucsv) {
    for (Index h : horizons) {
      for (Index t = first; t < end; ++t) ucsv_by_origin[t - h] = 0.0;
    }
    std::vector<Index> origins;
    for (const auto& kv : ucsv_by_origin) origins.push_back(kv.first);
    std::vector<double> values(origins.size());
    parallel_for_or_throw(origins.size(), workers, [&](std::size_t i) {
      const Index t = origins[i];
      bench::UcsvConfig c = cfg.ucsv;
      c.seed = cfg.ucsv.seed + static_cast<std::uint64_t>(t);
      values[i] = bench::ucsv_fit(ds.target.head(t + 1), c).forecast;
    });
    for (std::size_t i = 0; i < origins.size(); ++i) ucsv_by_origin[origins[i]] = values[i];
  }

  const Index P = end - first;
  std::vector<ForecastRun> runs(horizons.size());
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    auto& run = runs[k];
    run.model = std::string(benchmark_name(kind));
    run.horizon = horizons[k];
    run.forecasts.resize(P);
    run.realized = ds.target.segment(first, P);
    for (Index t = first; t < end; ++t) run.dates.push_back(ds.dates[static_cast<std::size_t>(t)]);
  }
  if (kind == BenchmarkKind::Ucsv) {
    for (std::size_t k = 0; k < horizons.size(); ++k) {
      for (Index j = 0; j < P; ++j) runs[k].forecasts(j) = ucsv_by_origin.at(first + j - horizons[k]);
    }
    return runs;
  }
  parallel_for_or_throw(horizons.size() * static_cast<std::size_t>(P), workers, [&](std::size_t job) {
    const std::size_t k = job / static_cast<std::size_t>(P);
    const Index j = static_cast<Index>(job % static_cast<std::size_t>(P));
    const Index h = horizons[k];
    const Index origin = first + j - h;
    double f = 0.0;
    if (kind == BenchmarkKind::Ar1) {
      const auto fit = bench::fit_ar1(ds.target.head(origin + 1));
      f = bench::ar1_forecast(fit, ds.target(origin), h);
    } else {
      bench::FadlConfig c = cfg.fadl;
      c.seed = cfg.fadl.seed + static_cast<std::uint64_t>(origin) * 64 + static_cast<std::uint64_t>(h);
      f = bench::fadl_fit_forecast(ds.target.head(origin + 1), ds.transformed.topRows(origin + 1), h, c).forecast;
    }
    runs[k].forecasts(j) = f;
  });
  return runs;
}

}  // namespace inflnet::eval
