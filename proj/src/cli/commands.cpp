#include "inflnet/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <sstream>

#include "inflnet/data/table.hpp"
#include "inflnet/eval/dm.hpp"
#include "inflnet/eval/executor.hpp"
#include "inflnet/eval/importance.hpp"
#include "inflnet/eval/rolling.hpp"
#include "inflnet/io.hpp"
#include "inflnet/models/memory.hpp"
#include "inflnet/nn/checkpoint.hpp"

namespace inflnet::cli {

namespace fs = std::filesystem;

namespace {

const models::ModelKind kAllKinds[] = {models::ModelKind::FfCpi, models::ModelKind::FfPool,
                                       models::ModelKind::LstmPool, models::ModelKind::LstmAll,
                                       models::ModelKind::FfLstm};

class Logger {
 public:
  explicit Logger(std::ostream* out) : out_(out) {}
  void operator()(const std::string& line) {
    if (!out_) return;
    std::lock_guard<std::mutex> lock(mu_);
    *out_ << line << std::endl;
  }

 private:
  std::ostream* out_;
  std::mutex mu_;
};

bool exists(const std::string& path) { return fs::exists(path); }

bool is_benchmark(const std::string& model) { return eval::parse_benchmark(model).has_value(); }

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

std::string horizon_tag(Index h) { return "h" + std::to_string(h); }

eval::BenchmarkConfig benchmark_config(const RunConfig& c) {
  eval::BenchmarkConfig b;
  b.ucsv = c.ucsv;
  b.fadl = c.fadl;
  return b;
}

std::string run_path(const RunConfig& c, const Layout& layout, const std::string& model, Index h) {
  (void)c;
  return is_benchmark(model) ? layout.benchmark(model, h) : layout.ensemble(model, h);
}

nn::TrainConfig training_for(const RunConfig& c, models::ModelKind kind) {
  return resolve_model(c, kind).train;
}

// Ensemble members trained on every target up to `last_target`, cached as
// checkpoints.
std::vector<eval::TrainedModel> trained_members(const RunConfig& c, const data::PreparedDataset& ds,
                                                models::ModelKind kind, Index h, Index last_target,
                                                const std::vector<std::uint64_t>& seeds, bool cache,
                                                const CommandOptions& options, Logger& log) {
  const auto layout = layout_of(c);
  const auto ref = resolve_model(c, kind);
  const auto spec = eval::bind_dimensions(ref.spec, ds);
  std::vector<eval::TrainedModel> out(seeds.size());
  eval::parallel_for_or_throw(seeds.size(), c.workers, [&](std::size_t i) {
    const auto path = layout.checkpoint(models::kind_name(kind), h, seeds[i]);
    if (cache && !options.force && exists(path)) {
      auto [net, params] = models::load_checkpoint(nn::read_checkpoint(path));
      if (net.spec().to_string() != spec.to_string()) {
        throw ValidationError("checkpoint '" + path + "' holds " + net.spec().to_string() + ", expected " +
                              spec.to_string() + "; rerun with --force");
      }
      out[i].net = std::move(net);
      out[i].params = std::move(params);
      out[i].last_target = last_target;
      return;
    }
    out[i] = eval::train_through(spec, ds, h, last_target, ref.train, seeds[i]);
    if (cache) nn::write_checkpoint(path, models::make_checkpoint(out[i].net, out[i].params));
    log("trained " + std::string(models::kind_name(kind)) + " " + horizon_tag(h) + " " + seed_tag(seeds[i]));
  });
  return out;
}

double validation_rmse(const eval::TrainedModel& m, const data::PreparedDataset& ds, Index h) {
  const Index first = ds.splits.train_end;
  const Index end = ds.splits.in_sample_end();
  const auto set = data::build_supervised(ds, m.net.spec().predictors(), h, first - h, end - 1 - h);
  const Vector pred = m.net.predict(m.params, set.inputs);
  double ss = 0.0;
  for (Index i = 0; i < pred.size(); ++i) {
    const double e = ds.target(set.origins[static_cast<std::size_t>(i)] + h) - ds.target_scaling.from_model(pred(i));
    ss += e * e;
  }
  return std::sqrt(ss / static_cast<double>(pred.size()));
}

}  // namespace

std::string Layout::effective_config() const { return root + "/effective_" + seed_tag(seed) + ".cfg"; }
std::string Layout::panel() const { return root + "/prepared/panel_" + seed_tag(seed) + ".csv"; }
std::string Layout::normalization() const { return root + "/prepared/normalization_" + seed_tag(seed) + ".csv"; }
std::string Layout::splits() const { return root + "/prepared/splits_" + seed_tag(seed) + ".csv"; }
std::string Layout::grid_scores(std::string_view model) const {
  return root + "/grid/" + std::string(model) + "_scores_" + seed_tag(seed) + ".csv";
}
std::string Layout::grid_best(std::string_view model) const {
  return root + "/grid/" + std::string(model) + "_best_" + seed_tag(seed) + ".cfg";
}
std::string Layout::member(std::string_view model, Index h, std::uint64_t s) const {
  return root + "/runs/" + std::string(model) + "_" + horizon_tag(h) + "_" + seed_tag(s) + ".csv";
}
std::string Layout::ensemble(std::string_view model, Index h) const {
  return root + "/runs/" + std::string(model) + "_" + horizon_tag(h) + "_ensemble_" + seed_tag(seed) + "-" +
         std::to_string(seed + static_cast<std::uint64_t>(members) - 1) + ".csv";
}
std::string Layout::benchmark(std::string_view model, Index h) const {
  return root + "/runs/" + std::string(model) + "_" + horizon_tag(h) + "_" + seed_tag(seed) + ".csv";
}
std::string Layout::failures(std::string_view model, Index h) const {
  return root + "/runs/" + std::string(model) + "_" + horizon_tag(h) + "_failures_" + seed_tag(seed) + ".log";
}
std::string Layout::checkpoint(std::string_view model, Index h, std::uint64_t s) const {
  return root + "/checkpoints/" + std::string(model) + "_" + horizon_tag(h) + "_" + seed_tag(s) + ".ckpt";
}
std::string Layout::table(const std::string& stem) const {
  return root + "/tables/" + stem + "_" + seed_tag(seed) + ".csv";
}

Layout layout_of(const RunConfig& c) { return {c.output, c.base_seed, c.ensemble_size}; }

data::PreparedDataset load_dataset(const RunConfig& c) {
  if (c.data.empty()) throw ValidationError("no data file configured (set `data` or pass --data)");
  if (!exists(c.data)) throw ValidationError("data file '" + c.data + "' does not exist");
  return data::prepare_dataset(data::load_table(c.data, c.series_overrides), c.prepare);
}

models::ReferenceConfig resolve_model(const RunConfig& c, models::ModelKind kind) {
  auto ref = models::reference_config(kind);
  const auto name = std::string(models::kind_name(kind));
  const auto best = layout_of(c).grid_best(name);
  if (exists(best)) {
    const auto kv = KeyValueConfig::load(best);
    if (auto s = kv.get("model." + name)) ref.spec = models::NetworkSpec::parse("kind=" + name + " " + *s);
    if (auto t = kv.get("train." + name)) ref.train = parse_train(*t);
  }
  if (auto it = c.model_specs.find(kind); it != c.model_specs.end()) ref.spec = it->second;
  if (auto it = c.model_training.find(kind); it != c.model_training.end()) ref.train = it->second;
  return ref;
}

void write_effective_config(const RunConfig& c) {
  RunConfig resolved = c;
  for (auto kind : kAllKinds) {
    const auto ref = resolve_model(c, kind);
    resolved.model_specs[kind] = ref.spec;
    resolved.model_training[kind] = ref.train;
  }
  write_text_atomic(layout_of(c).effective_config(),
                    "# effective configuration, defaults resolved\n" + to_entries(resolved).serialize());
}

void cmd_prepare(const RunConfig& c, const CommandOptions& options) {
  Logger log(options.log);
  const auto layout = layout_of(c);
  const auto ds = load_dataset(c);
  const auto& s = ds.splits;
  auto date = [&](Index row) { return ds.dates[static_cast<std::size_t>(row)].to_string(); };
  std::ostringstream splits;
  splits << "segment,first,last,rows\n";
  auto segment = [&](const std::string& name, Index b, Index e) {
    splits << name << "," << date(b) << "," << date(e - 1) << "," << (e - b) << "\n";
  };
  segment("train", 0, s.train_end);
  for (int k = 0; k < 3; ++k) segment("validation_" + std::to_string(k + 1), s.train_end, s.validation_ends[k]);
  segment("test", s.test_begin(), s.test_end);

  const bool done = exists(layout.panel()) && exists(layout.normalization()) && exists(layout.splits());
  if (done && !options.force) {
    log("prepare: artifacts exist, skipping (use --force to rebuild)");
  } else {
    data::write_panel_csv(ds, layout.panel());
    data::write_normalization_audit(ds, layout.normalization());
    write_text_atomic(layout.splits(), splits.str());
  }
  log("panel " + std::to_string(ds.rows()) + " x " + std::to_string(ds.cols()) + ", w block " +
      std::to_string(ds.w_width()) + ", pool " + std::to_string(ds.z_width()));
  log(splits.str());
}

void cmd_gridsearch(const RunConfig& c, models::ModelKind kind, const CommandOptions& options) {
  Logger log(options.log);
  const auto layout = layout_of(c);
  const auto name = std::string(models::kind_name(kind));
  if (exists(layout.grid_best(name)) && !options.force) {
    log("gridsearch " + name + ": " + layout.grid_best(name) + " exists, skipping");
    return;
  }
  const auto ds = load_dataset(c);

  eval::HandOff handoff;
  auto saved = [&](models::ModelKind k) -> std::optional<models::NetworkSpec> {
    if (!exists(layout.grid_best(models::kind_name(k)))) return std::nullopt;
    return resolve_model(c, k).spec;
  };
  handoff.ff_cpi = saved(models::ModelKind::FfCpi);
  handoff.ff_pool = saved(models::ModelKind::FfPool);
  handoff.lstm_pool = saved(models::ModelKind::LstmPool);

  eval::GridConfig gc;
  gc.horizons = c.horizons;
  gc.repetitions = c.grid_repetitions;
  gc.base_seed = c.base_seed;
  gc.refit_every = c.refit_every;
  gc.workers = c.workers;

  const auto base_train = training_for(c, kind);
  const auto stage1 = eval::stage_one_candidates(kind, c.stage_one, handoff, base_train);
  log("gridsearch " + name + ": stage 1, " + std::to_string(stage1.size()) + " candidates");
  const auto r1 = eval::grid_search(stage1, ds, gc);
  const auto arch = r1.winner().candidate.spec;
  const auto stage2 = eval::stage_two_candidates(arch, c.stage_two, base_train);
  log("gridsearch " + name + ": stage 2, " + std::to_string(stage2.size()) + " candidates on " + arch.to_string());
  const auto r2 = eval::grid_search(stage2, ds, gc);

  std::ostringstream scores;
  scores << "stage,spec,train,window_1,window_2,window_3,score\n";
  auto dump = [&](int stage, const eval::GridResult& r) {
    for (const auto& s : r.scores) {
      scores << stage << ",\"" << s.candidate.spec.to_string() << "\",\"" << train_to_string(s.candidate.train) << "\","
             << format_double(s.window_rmse[0]) << "," << format_double(s.window_rmse[1]) << ","
             << format_double(s.window_rmse[2]) << "," << format_double(s.score) << "\n";
    }
  };
  dump(1, r1);
  dump(2, r2);
  write_text_atomic(layout.grid_scores(name), scores.str());

  auto best = r2.winner().candidate;
  best.spec.pool_width = 0;
  best.spec.cpi_width = 0;
  auto text = best.spec.to_string();
  text = text.substr(text.find(' ') + 1);
  KeyValueConfig kv;
  kv.set("model." + name, text);
  kv.set("train." + name, train_to_string(best.train));
  write_text_atomic(layout.grid_best(name), kv.serialize());
  log("gridsearch " + name + ": best " + text + " " + train_to_string(best.train) + " (score " +
      format_double(r2.winner().score) + ")");
}

void cmd_run(const RunConfig& c, const std::string& model, const CommandOptions& options) {
  Logger log(options.log);
  const auto layout = layout_of(c);
  const auto ds = load_dataset(c);

  if (auto bench = eval::parse_benchmark(model)) {
    std::vector<Index> todo;
    for (Index h : c.horizons) {
      if (options.force || !exists(layout.benchmark(model, h))) todo.push_back(h);
    }
    if (todo.empty()) {
      log("run " + model + ": all horizons exist, skipping");
      return;
    }
    const auto runs = eval::benchmark_forecasts(*bench, ds, todo, benchmark_config(c), c.workers);
    for (const auto& r : runs) {
      eval::write_run(layout.benchmark(model, r.horizon), r);
      log("run " + model + " " + horizon_tag(r.horizon) + ": " + std::to_string(r.size()) + " forecasts");
    }
    return;
  }

  const auto kind = models::parse_kind(model);
  const auto ref = resolve_model(c, kind);
  eval::RollingConfig rc;
  rc.refit_every = c.refit_every;
  rc.train = ref.train;
  const auto K = static_cast<std::size_t>(c.ensemble_size);

  struct Job {
    Index h;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (Index h : c.horizons) {
    for (std::size_t k = 0; k < K; ++k) {
      const std::uint64_t s = c.base_seed + k;
      if (options.force || !exists(layout.member(model, h, s))) jobs.push_back({h, s});
    }
  }
  log("run " + model + ": " + std::to_string(jobs.size()) + " member runs to compute (" + ref.spec.to_string() + " " +
      train_to_string(ref.train) + ")");
  const auto failures = eval::parallel_for(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    try {
      const auto run = eval::rolling_forecast(ref.spec, ds, job.h, job.seed, rc);
      eval::write_run(layout.member(model, job.h, job.seed), run);
    } catch (const eval::PartialRunError& e) {
      throw TrainingError(std::string(e.what()) + " [last good forecast " + e.last_good_date() + ", " +
                          std::to_string(e.partial().size()) + " completed]");
    }
  });

  std::map<Index, std::vector<std::string>> failed_by_h;
  for (const auto& f : failures) {
    const auto& job = jobs[f.index];
    failed_by_h[job.h].push_back(seed_tag(job.seed) + ": " + f.message);
    log("run " + model + " " + horizon_tag(job.h) + " " + seed_tag(job.seed) + " failed: " + f.message);
  }
  std::string aborted;
  for (Index h : c.horizons) {
    const auto& failed = failed_by_h[h];
    if (!failed.empty()) {
      std::string text;
      for (const auto& line : failed) text += line + "\n";
      write_text_atomic(layout.failures(model, h), text);
    }
    const double share = static_cast<double>(failed.size()) / static_cast<double>(K);
    if (share > c.max_failure_share) {
      aborted += " " + horizon_tag(h) + " (" + std::to_string(failed.size()) + "/" + std::to_string(K) + " seeds)";
      continue;
    }
    if (!options.force && failed.empty() && exists(layout.ensemble(model, h)) && jobs.empty()) continue;
    std::vector<eval::ForecastRun> members;
    for (std::size_t k = 0; k < K; ++k) {
      const auto path = layout.member(model, h, c.base_seed + k);
      if (exists(path)) members.push_back(eval::read_run(path, model));
    }
    const auto ens = eval::ensemble(members, model);
    eval::write_run(layout.ensemble(model, h), ens);
    log("run " + model + " " + horizon_tag(h) + ": ensemble of " + std::to_string(members.size()) + " members");
  }
  if (!aborted.empty()) throw TrainingError("run " + model + " aborted, too many failed seeds at" + aborted);
}

void cmd_evaluate(const RunConfig& c, const CommandOptions& options) {
  Logger log(options.log);
  const auto layout = layout_of(c);
  const auto main_table = layout.table("evaluation");
  if (exists(main_table) && !options.force) {
    log("evaluate: " + main_table + " exists, skipping");
    return;
  }

  std::vector<std::string> missing;
  auto need = [&](const std::string& path) {
    if (!exists(path)) missing.push_back(path);
  };
  for (Index h : c.horizons) {
    need(layout.benchmark(c.benchmark, h));
    for (const auto& m : c.evaluate_models) {
      if (!is_benchmark(m)) models::parse_kind(m);
      need(run_path(c, layout, m, h));
    }
  }
  if (!missing.empty()) {
    std::string text = "missing forecast runs:";
    for (const auto& p : missing) text += "\n  " + p;
    throw ValidationError(text);
  }

  std::ostringstream table, wide, dm_summary;
  table << "model,horizon,loss_ratio,dm,p_value,stars\n";
  wide << "model";
  for (Index h : c.horizons) wide << "," << horizon_tag(h);
  wide << "\n";
  dm_summary << "model,horizon,members,median,share_beyond_5,share_beyond_1,share_members_better_5\n";

  std::vector<std::string> rows = c.evaluate_models;
  if (std::find(rows.begin(), rows.end(), c.benchmark) == rows.end()) rows.insert(rows.begin(), c.benchmark);
  for (const auto& m : rows) {
    wide << m;
    for (Index h : c.horizons) {
      const auto bench = eval::read_run(layout.benchmark(c.benchmark, h), c.benchmark);
      const auto run = eval::read_run(run_path(c, layout, m, h), m);
      const double ratio = eval::loss_ratio(run, bench, c.loss);
      const auto d = eval::loss_differential(run, bench, c.loss);
      const double stat = eval::dm_statistic(d);
      const double p = eval::dm_pvalue(stat);
      const auto stars = eval::significance_stars(p);
      table << m << "," << h << "," << format_double(ratio) << "," << format_double(stat) << "," << format_double(p)
            << "," << stars << "\n";
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(2) << ratio << stars;
      wide << "," << cell.str();

      if (m == c.benchmark) continue;
      const Index window = c.fluctuation_window > 0 ? c.fluctuation_window : eval::default_fluctuation_window(d.size());
      if (window >= 8 && window <= d.size()) {
        const auto fl = eval::fluctuation_test(d.values, window);
        std::ostringstream out;
        out << "center_date,statistic,critical_value\n";
        for (std::size_t i = 0; i < fl.centers.size(); ++i) {
          out << run.dates[static_cast<std::size_t>(fl.centers[i])].to_string() << ","
              << format_double(fl.statistics(static_cast<Index>(i))) << "," << format_double(fl.critical_value) << "\n";
        }
        write_text_atomic(layout.table("fluctuation_" + m + "_" + horizon_tag(h)), out.str());
      } else {
        log("evaluate: sample of " + std::to_string(d.size()) + " too short for a fluctuation window at " + m + " " +
            horizon_tag(h));
      }

      if (is_benchmark(m)) continue;
      std::vector<eval::ForecastRun> members;
      std::vector<std::uint64_t> seeds;
      for (Index k = 0; k < c.ensemble_size; ++k) {
        const auto path = layout.member(m, h, c.base_seed + static_cast<std::uint64_t>(k));
        if (exists(path)) {
          members.push_back(eval::read_run(path, m));
          seeds.push_back(c.base_seed + static_cast<std::uint64_t>(k));
        }
      }
      if (members.empty()) continue;
      const auto dist = eval::dm_over_initializations(members, run);
      std::ostringstream out;
      out << "seed,dm\n";
      for (std::size_t k = 0; k < seeds.size(); ++k) {
        out << seeds[k] << "," << format_double(dist.statistics(static_cast<Index>(k))) << "\n";
      }
      write_text_atomic(layout.table("dm_members_" + m + "_" + horizon_tag(h)), out.str());
      dm_summary << m << "," << h << "," << members.size() << "," << format_double(dist.median) << ","
                 << format_double(dist.share_beyond_5) << "," << format_double(dist.share_beyond_1) << ","
                 << format_double(dist.share_members_better_5) << "\n";
    }
    wide << "\n";
  }
  write_text_atomic(layout.table("loss_ratios"), wide.str());
  write_text_atomic(layout.table("dm_members_summary"), dm_summary.str());
  write_text_atomic(main_table, table.str());
  log(wide.str());
}

void cmd_importance(const RunConfig& c, models::ModelKind kind, const CommandOptions& options) {
  Logger log(options.log);
  const auto layout = layout_of(c);
  const auto name = std::string(models::kind_name(kind));
  const auto ds = load_dataset(c);
  const Index count = c.importance_members > 0 ? c.importance_members : c.ensemble_size;
  std::vector<std::uint64_t> seeds;
  for (Index k = 0; k < count; ++k) seeds.push_back(c.base_seed + static_cast<std::uint64_t>(k));

  eval::ImportanceOptions io;
  io.shock_sd = c.shock_sd;
  io.last_lag_only = c.last_lag_only;
  io.variables = c.importance_variables;
  for (Index h : c.horizons) {
    const auto path = layout.table("importance_" + name + "_" + horizon_tag(h));
    const auto group_path = layout.table("importance_groups_" + name + "_" + horizon_tag(h));
    if (exists(path) && exists(group_path) && !options.force) {
      log("importance " + name + " " + horizon_tag(h) + ": exists, skipping");
      continue;
    }
    const auto members =
        trained_members(c, ds, kind, h, ds.splits.in_sample_end() - 1, seeds, true, options, log);
    const auto t = eval::variable_importance(members, ds, h, io);
    std::ostringstream out;
    out << "variable,group,gain\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << '"' << t.variables[i] << "\"," << data::group_label(t.groups[i]) << "," << format_double(t.gains[i]) << "\n";
    }
    write_text_atomic(path, out.str());
    std::ostringstream groups;
    groups << "rank,group,members,gain\n";
    int rank = 0;
    for (auto g : t.ranking()) {
      const auto gi = static_cast<std::size_t>(g);
      groups << ++rank << "," << data::group_label(g) << "," << t.group_members[gi] << ","
             << format_double(t.group_gains[gi]) << "\n";
    }
    write_text_atomic(group_path, groups.str());
    log("importance " + name + " " + horizon_tag(h) + ": " + std::to_string(t.columns.size()) + " variables, " +
        std::to_string(members.size()) + " members");
  }
}

void cmd_memory(const RunConfig& c, models::ModelKind kind, const CommandOptions& options) {
  Logger log(options.log);
  if (!models::has_lstm(kind)) throw ValidationError("memory extraction needs an LSTM model, got " + std::string(models::kind_name(kind)));
  const auto layout = layout_of(c);
  const auto name = std::string(models::kind_name(kind));
  const auto ds = load_dataset(c);
  std::vector<std::uint64_t> seeds;
  for (Index k = 0; k < c.memory_candidates; ++k) seeds.push_back(c.base_seed + static_cast<std::uint64_t>(k));

  for (Index h : c.horizons) {
    const auto selection_path = layout.table("memory_selection_" + name + "_" + horizon_tag(h));
    if (exists(selection_path) && !options.force) {
      log("memory " + name + " " + horizon_tag(h) + ": exists, skipping");
      continue;
    }
    const auto members = trained_members(c, ds, kind, h, ds.splits.train_end - 1, seeds, false, options, log);
    std::vector<models::Candidate> candidates;
    for (std::size_t i = 0; i < members.size(); ++i) candidates.push_back({seeds[i], validation_rmse(members[i], ds, h)});
    const auto pick = models::select_by_validation(candidates);
    const auto& chosen = members[pick];
    const auto mem = models::extract_internal_memory(chosen.net, chosen.params, ds, h);

    const auto stem = name + "_" + horizon_tag(h);
    std::ostringstream out;
    out << "date";
    for (Index j = 0; j < mem.memory.rows(); ++j) out << ",f" << (j + 1);
    out << ",trailing_inflation\n";
    for (std::size_t w = 0; w < mem.origins.size(); ++w) {
      out << ds.dates[static_cast<std::size_t>(mem.origins[w])].to_string();
      for (Index j = 0; j < mem.memory.rows(); ++j) out << "," << format_double(mem.memory(j, static_cast<Index>(w)));
      out << "," << format_double(mem.reference(static_cast<Index>(w))) << "\n";
    }
    write_text_atomic(layout.table("memory_" + stem), out.str());
    std::ostringstream corr;
    corr << "component,correlation\n";
    for (Index j = 0; j < mem.correlations.size(); ++j) corr << "f" << (j + 1) << "," << format_double(mem.correlations(j)) << "\n";
    write_text_atomic(layout.table("memory_correlations_" + stem), corr.str());

    std::ostringstream sel;
    sel << "seed,validation_rmse,selected\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      sel << candidates[i].seed << "," << format_double(candidates[i].validation_rmse) << "," << (i == pick ? 1 : 0) << "\n";
    }
    write_text_atomic(selection_path, sel.str());
    log("memory " + name + " " + horizon_tag(h) + ": selected " + seed_tag(seeds[pick]) + " of " +
        std::to_string(candidates.size()));
  }
}

}  // namespace inflnet::cli
