#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "inflnet/common.hpp"
#include "inflnet/data/calendar.hpp"
#include "inflnet/data/normalizer.hpp"
#include "inflnet/data/table.hpp"

namespace inflnet::data {

// Row boundaries, all exclusive ends. Training is [0, train_end); the three
// nested validation windows are [train_end, validation_ends[k]); the test
// window is [validation_ends[2], test_end).
struct SplitBoundaries {
  Index train_end = 0;
  std::array<Index, 3> validation_ends{};
  Index test_end = 0;

  Index in_sample_end() const { return validation_ends[2]; }
  Index test_begin() const { return validation_ends[2]; }
  Index test_size() const { return test_end - validation_ends[2]; }
};

// Either calendar cut-offs (last month of each window) or fractions.
struct SplitSpec {
  std::optional<YearMonth> train_last;
  std::array<std::optional<YearMonth>, 3> validation_last;
  std::optional<YearMonth> test_last;

  double train_fraction = 0.6;
  double validation_fraction = 0.2;
  double test_fraction = 0.2;

  bool uses_dates() const { return train_last.has_value(); }

  static SplitSpec fred_md_default();
  static SplitSpec fractions(double train, double validation, double test);
};

SplitBoundaries split_samples(const std::vector<YearMonth>& dates, const SplitSpec& spec);
SplitBoundaries split_samples(Index rows, const SplitSpec& spec);

enum class ImputeMode { FullSample, InSample };
enum class NormalizeThrough { InSample, Training };

// Maps targets between raw log-difference units and the units the networks
// are trained in. Disabled means identity.
struct TargetScaling {
  bool enabled = false;
  double min = 0.0;
  double max = 1.0;

  double to_model(double y) const { return enabled ? 2.0 * (y - min) / (max - min) - 1.0 : y; }
  double from_model(double y) const { return enabled ? (y + 1.0) * 0.5 * (max - min) + min : y; }
};

struct PrepareOptions {
  std::string target = "CPIAUCSL";
  std::vector<std::string> w_columns;  // empty: the FRED-MD CPI block, else just the target
  std::optional<int> target_tcode = 5;
  int trim_rows = 2;
  ImputeMode impute = ImputeMode::FullSample;
  NormalizeThrough normalize_through = NormalizeThrough::InSample;
  bool normalize_target = false;
  SplitSpec splits = SplitSpec::fred_md_default();
};

struct PreparedDataset {
  std::vector<YearMonth> dates;
  std::vector<std::string> names;
  std::vector<int> tcodes;
  std::vector<EconomicGroup> groups;

  Matrix transformed;  // stationarized and imputed, T' x N
  Matrix matrix;       // normalized, T' x N
  Vector target;       // raw target series (CPI log difference), length T'

  Index cpi_index = 0;
  std::vector<Index> w_columns;
  std::vector<Index> z_columns;
  SplitBoundaries splits;
  Normalizer normalizer;
  TargetScaling target_scaling;

  Index rows() const { return matrix.rows(); }
  Index cols() const { return matrix.cols(); }
  Index w_width() const { return static_cast<Index>(w_columns.size()); }
  Index z_width() const { return static_cast<Index>(z_columns.size()); }
};

PreparedDataset prepare_dataset(const RawSeriesTable& table, const PrepareOptions& options = {});

// Builds a prepared dataset directly from a stationary panel. Used for
// synthetic experiments; no transforms or imputation are applied.
PreparedDataset make_dataset(const Matrix& stationary, const Vector& target, std::vector<Index> w_columns,
                             Index cpi_index, const SplitBoundaries& splits,
                             std::vector<YearMonth> dates = {}, std::vector<std::string> names = {},
                             std::vector<EconomicGroup> groups = {});

void write_panel_csv(const PreparedDataset& ds, const std::string& path);
void write_normalization_audit(const PreparedDataset& ds, const std::string& path);

}  // namespace inflnet::data
