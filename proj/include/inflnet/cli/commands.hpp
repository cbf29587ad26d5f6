#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inflnet/cli/config.hpp"

namespace inflnet::cli {

struct CommandOptions {
  bool force = false;  // recompute artifacts that already exist
  std::ostream* log = nullptr;  // progress messages; null silences them
};

// Output layout under config.output. Every name carries a seed.
struct Layout {
  std::string root;
  std::uint64_t seed = 0;
  Index members = 1;

  std::string effective_config() const;
  std::string panel() const;
  std::string normalization() const;
  std::string splits() const;
  std::string grid_scores(std::string_view model) const;
  std::string grid_best(std::string_view model) const;
  std::string member(std::string_view model, Index horizon, std::uint64_t member_seed) const;
  std::string ensemble(std::string_view model, Index horizon) const;
  std::string benchmark(std::string_view model, Index horizon) const;
  std::string failures(std::string_view model, Index horizon) const;
  std::string checkpoint(std::string_view model, Index horizon, std::uint64_t member_seed) const;
  std::string table(const std::string& stem) const;  // tables/<stem>_seed<base>.csv
};

Layout layout_of(const RunConfig& config);

data::PreparedDataset load_dataset(const RunConfig& config);

// Explicit config entry, else a saved grid-search optimum, else the
// reference configuration. N and M are left unbound.
models::ReferenceConfig resolve_model(const RunConfig& config, models::ModelKind kind);

void write_effective_config(const RunConfig& config);

void cmd_prepare(const RunConfig& config, const CommandOptions& options);
void cmd_gridsearch(const RunConfig& config, models::ModelKind kind, const CommandOptions& options);
// `model` is a network kind or a benchmark name (ar1, ucsv, fadl).
void cmd_run(const RunConfig& config, const std::string& model, const CommandOptions& options);
void cmd_evaluate(const RunConfig& config, const CommandOptions& options);
void cmd_importance(const RunConfig& config, models::ModelKind kind, const CommandOptions& options);
void cmd_memory(const RunConfig& config, models::ModelKind kind, const CommandOptions& options);

}  // namespace inflnet::cli
