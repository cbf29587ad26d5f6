#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inflnet/cli/commands.hpp"
#include "inflnet/common.hpp"

using namespace inflnet;

namespace {

struct Globals {
  std::string config_path;
  bool force = false;
  bool quiet = false;
  std::vector<std::string> sets;
  std::string output, data, horizons;
  long members = -1;
  long seed = -1;
  long workers = -1;
};

KeyValueConfig entries_from(const Globals& g) {
  KeyValueConfig kv;
  if (!g.config_path.empty()) kv = KeyValueConfig::load(g.config_path);
  KeyValueConfig flags;
  for (const auto& s : g.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--set expects key=value, got '" + s + "'");
    flags.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
  if (!g.output.empty()) flags.set("output", g.output);
  if (!g.data.empty()) flags.set("data", g.data);
  if (!g.horizons.empty()) flags.set("horizons", g.horizons);
  if (g.members >= 0) flags.set("ensemble_size", std::to_string(g.members));
  if (g.seed >= 0) flags.set("base_seed", std::to_string(g.seed));
  if (g.workers >= 0) flags.set("workers", std::to_string(g.workers));
  kv.merge(flags);
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inflation forecasting with feed-forward and LSTM networks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-c,--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_flag("-f,--force", g.force, "recompute artifacts that already exist");
  app.add_flag("-q,--quiet", g.quiet, "suppress progress messages");
  app.add_option("--set", g.sets, "override a configuration key (key=value), repeatable");
  app.add_option("-o,--output", g.output, "output directory");
  app.add_option("-d,--data", g.data, "raw data CSV");
  app.add_option("--horizons", g.horizons, "comma-separated forecast horizons");
  app.add_option("-K,--members", g.members, "ensemble size")->check(CLI::PositiveNumber);
  app.add_option("-s,--seed", g.seed, "base seed")->check(CLI::NonNegativeNumber);
  app.add_option("-w,--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);

  std::string model;
  auto* prepare = app.add_subcommand("prepare", "transform, impute and normalize the raw panel");
  auto* grid = app.add_subcommand("gridsearch", "two-stage hyperparameter search for one network");
  grid->add_option("-m,--model", model, "ff_cpi, ff_pool, lstm_pool, lstm_all or ff_lstm")->required();
  auto* run = app.add_subcommand("run", "rolling out-of-sample forecasts for a network ensemble or a benchmark");
  run->add_option("-m,--model", model, "network kind or ar1, ucsv, fadl")->required();
  auto* evaluate = app.add_subcommand("evaluate", "loss ratios, DM and fluctuation tests against the benchmark");
  auto* importance = app.add_subcommand("importance", "perturbation variable importance");
  importance->add_option("-m,--model", model, "network kind")->required();
  auto* memory = app.add_subcommand("memory", "extract LSTM internal memory");
  memory->add_option("-m,--model", model, "lstm_pool, lstm_all or ff_lstm")->required();
  auto* show = app.add_subcommand("config", "print the effective configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto config = cli::resolve(entries_from(g));
    cli::CommandOptions options;
    options.force = g.force;
    options.log = g.quiet ? nullptr : &std::cerr;

    if (show->parsed()) {
      std::cout << cli::to_entries(config).serialize();
      return 0;
    }
    cli::write_effective_config(config);
    if (prepare->parsed()) cli::cmd_prepare(config, options);
    if (grid->parsed()) cli::cmd_gridsearch(config, models::parse_kind(model), options);
    if (run->parsed()) cli::cmd_run(config, model, options);
    if (evaluate->parsed()) cli::cmd_evaluate(config, options);
    if (importance->parsed()) cli::cmd_importance(config, models::parse_kind(model), options);
    if (memory->parsed()) cli::cmd_memory(config, models::parse_kind(model), options);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
