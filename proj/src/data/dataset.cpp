#include "inflnet/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "inflnet/data/transforms.hpp"
#include "inflnet/io.hpp"

namespace inflnet::data {

SplitSpec SplitSpec::fred_md_default() {
  SplitSpec s;
  s.train_last = YearMonth(1993, 4);
  s.validation_last = {YearMonth(1997, 10), YearMonth(2002, 3), YearMonth(2006, 7)};
  s.test_last = YearMonth(2019, 10);
  return s;
}

SplitSpec SplitSpec::fractions(double train, double validation, double test) {
  SplitSpec s;
  s.train_fraction = train;
  s.validation_fraction = validation;
  s.test_fraction = test;
  return s;
}

namespace {

void check_ordered(const SplitBoundaries& b, Index rows) {
  const bool ok = b.train_end > 0 && b.validation_ends[0] > b.train_end &&
                  b.validation_ends[1] > b.validation_ends[0] && b.validation_ends[2] > b.validation_ends[1] &&
                  b.test_end > b.validation_ends[2] && b.test_end <= rows;
  if (!ok) {
    std::ostringstream msg;
    msg << "split boundaries are not strictly ordered inside " << rows << " rows: train_end=" << b.train_end
        << " validation_ends=" << b.validation_ends[0] << "/" << b.validation_ends[1] << "/"
        << b.validation_ends[2] << " test_end=" << b.test_end;
    throw ValidationError(msg.str());
  }
}

}  // namespace

SplitBoundaries split_samples(Index rows, const SplitSpec& spec) {
  if (spec.uses_dates()) throw ValidationError("calendar splits need a date index");
  const double total = spec.train_fraction + spec.validation_fraction + spec.test_fraction;
  if (spec.train_fraction <= 0 || spec.validation_fraction <= 0 || spec.test_fraction <= 0 || total > 1.0 + 1e-9) {
    throw ValidationError("split fractions must be positive and sum to at most 1");
  }
  const auto at = [rows](double f) { return static_cast<Index>(std::llround(f * static_cast<double>(rows))); };
  SplitBoundaries b;
  b.train_end = at(spec.train_fraction);
  const Index val_end = at(spec.train_fraction + spec.validation_fraction);
  const double val_len = static_cast<double>(val_end - b.train_end);
  b.validation_ends[0] = b.train_end + static_cast<Index>(std::llround(val_len / 3.0));
  b.validation_ends[1] = b.train_end + static_cast<Index>(std::llround(2.0 * val_len / 3.0));
  b.validation_ends[2] = val_end;
  b.test_end = std::min(rows, at(total));
  check_ordered(b, rows);
  return b;
}

SplitBoundaries split_samples(const std::vector<YearMonth>& dates, const SplitSpec& spec) {
  const auto rows = static_cast<Index>(dates.size());
  if (!spec.uses_dates()) return split_samples(rows, spec);
  if (dates.empty()) throw ValidationError("empty date index");

  auto end_after = [&](const std::optional<YearMonth>& last, const char* what) -> Index {
    if (!last) throw ValidationError(std::string("missing split date for ") + what);
    if (*last < dates.front() || *last > dates.back()) {
      throw ValidationError(std::string("dataset (") + dates.front().to_string() + " to " + dates.back().to_string() +
                            ") does not cover the " + what + " cut-off " + last->to_string());
    }
    return static_cast<Index>(*last - dates.front()) + 1;
  };

  SplitBoundaries b;
  b.train_end = end_after(spec.train_last, "training");
  for (std::size_t k = 0; k < 3; ++k) b.validation_ends[k] = end_after(spec.validation_last[k], "validation");
  b.test_end = spec.test_last ? end_after(spec.test_last, "test") : rows;
  check_ordered(b, rows);
  return b;
}

PreparedDataset prepare_dataset(const RawSeriesTable& table, const PrepareOptions& options) {
  table.validate();
  const Index T = table.rows();
  const Index N = table.cols();
  const Index cpi = table.column(options.target);
  if (options.trim_rows < 0 || options.trim_rows >= T) throw ValidationError("invalid trim length");

  PreparedDataset ds;
  ds.names = table.names;
  ds.groups = table.groups;
  ds.tcodes = table.tcodes;
  if (options.target_tcode) ds.tcodes[static_cast<std::size_t>(cpi)] = *options.target_tcode;

  const Index trim = options.trim_rows;
  const Index rows = T - trim;
  Matrix stationary(rows, N);
  std::vector<double> column(static_cast<std::size_t>(T));
  for (Index j = 0; j < N; ++j) {
    const int code = ds.tcodes[static_cast<std::size_t>(j)];
    const int order = tcode_order(code);
    if (order > trim) {
      throw ValidationError("series '" + table.names[static_cast<std::size_t>(j)] + "' needs " +
                            std::to_string(order) + " leading rows but only " + std::to_string(trim) +
                            " are trimmed");
    }
    for (Index i = 0; i < T; ++i) column[static_cast<std::size_t>(i)] = table.values(i, j);
    std::vector<double> out;
    try {
      out = apply_tcode(column, code);
    } catch (const DomainError& e) {
      throw DomainError("series '" + table.names[static_cast<std::size_t>(j)] + "': " + e.what());
    }
    for (Index i = trim; i < T; ++i) stationary(i - trim, j) = out[static_cast<std::size_t>(i - order)];
  }
  ds.dates.assign(table.dates.begin() + trim, table.dates.end());
  ds.splits = split_samples(ds.dates, options.splits);

  ds.transformed = options.impute == ImputeMode::FullSample
                       ? impute_missing(stationary)
                       : impute_missing(stationary, ds.splits.in_sample_end());

  const Index norm_end =
      options.normalize_through == NormalizeThrough::InSample ? ds.splits.in_sample_end() : ds.splits.train_end;
  ds.normalizer = Normalizer::fit(ds.transformed, norm_end, ds.names);
  ds.matrix = ds.normalizer.apply(ds.transformed);
  ds.cpi_index = cpi;
  ds.target = ds.transformed.col(cpi);
  if (options.normalize_target) {
    ds.target_scaling.enabled = true;
    ds.target_scaling.min = ds.target.head(norm_end).minCoeff();
    ds.target_scaling.max = ds.target.head(norm_end).maxCoeff();
  }

  std::vector<std::string> w_names = options.w_columns;
  if (w_names.empty()) {
    const auto& block = fred_md_cpi_block();
    const bool all_present = std::all_of(block.begin(), block.end(), [&](const std::string& n) {
      return std::find(table.names.begin(), table.names.end(), n) != table.names.end();
    });
    w_names = all_present ? block : std::vector<std::string>{options.target};
  }
  if (std::find(w_names.begin(), w_names.end(), options.target) == w_names.end()) {
    throw ValidationError("the w block must contain the target series '" + options.target + "'");
  }
  std::vector<bool> in_w(static_cast<std::size_t>(N), false);
  for (const auto& name : w_names) {
    const Index j = table.column(name);
    if (in_w[static_cast<std::size_t>(j)]) throw ValidationError("duplicate w column '" + name + "'");
    in_w[static_cast<std::size_t>(j)] = true;
    ds.w_columns.push_back(j);
  }
  for (Index j = 0; j < N; ++j) {
    if (!in_w[static_cast<std::size_t>(j)]) ds.z_columns.push_back(j);
  }
  return ds;
}

PreparedDataset make_dataset(const Matrix& stationary, const Vector& target, std::vector<Index> w_columns,
                             Index cpi_index, const SplitBoundaries& splits, std::vector<YearMonth> dates,
                             std::vector<std::string> names, std::vector<EconomicGroup> groups) {
  const Index T = stationary.rows();
  const Index N = stationary.cols();
  if (target.size() != T) throw ShapeError("target length differs from panel rows");
  check_ordered(splits, T);
  PreparedDataset ds;
  if (dates.empty()) {
    for (Index i = 0; i < T; ++i) dates.push_back(YearMonth(1960, 1) + static_cast<int>(i));
  }
  if (names.empty()) {
    for (Index j = 0; j < N; ++j) names.push_back("x" + std::to_string(j));
  }
  if (groups.empty()) groups.assign(static_cast<std::size_t>(N), EconomicGroup::OutputIncome);
  if (static_cast<Index>(dates.size()) != T || static_cast<Index>(names.size()) != N ||
      static_cast<Index>(groups.size()) != N) {
    throw ShapeError("metadata sizes do not match the panel");
  }
  ds.dates = std::move(dates);
  ds.names = std::move(names);
  ds.groups = std::move(groups);
  ds.tcodes.assign(static_cast<std::size_t>(N), 1);
  ds.transformed = stationary;
  ds.splits = splits;
  ds.normalizer = Normalizer::fit(stationary, splits.in_sample_end(), ds.names);
  ds.matrix = ds.normalizer.apply(stationary);
  ds.target = target;
  ds.cpi_index = cpi_index;
  std::vector<bool> in_w(static_cast<std::size_t>(N), false);
  for (Index j : w_columns) {
    if (j < 0 || j >= N) throw ValidationError("w column out of range");
    in_w[static_cast<std::size_t>(j)] = true;
  }
  ds.w_columns = std::move(w_columns);
  for (Index j = 0; j < N; ++j) {
    if (!in_w[static_cast<std::size_t>(j)]) ds.z_columns.push_back(j);
  }
  return ds;
}

void write_panel_csv(const PreparedDataset& ds, const std::string& path) {
  std::ostringstream out;
  out << "date,target";
  for (const auto& n : ds.names) out << "," << n;
  out << "\n";
  for (Index i = 0; i < ds.rows(); ++i) {
    out << ds.dates[static_cast<std::size_t>(i)].to_string() << "," << format_double(ds.target(i));
    for (Index j = 0; j < ds.cols(); ++j) out << "," << format_double(ds.matrix(i, j));
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_normalization_audit(const PreparedDataset& ds, const std::string& path) {
  std::ostringstream out;
  out << "series,tcode,group,role,in_sample_min,in_sample_max,fitted_rows\n";
  std::vector<std::string> role(ds.names.size(), "z");
  for (Index j : ds.w_columns) role[static_cast<std::size_t>(j)] = "w";
  role[static_cast<std::size_t>(ds.cpi_index)] = "target";
  for (std::size_t j = 0; j < ds.names.size(); ++j) {
    out << '"' << ds.names[j] << '"' << "," << ds.tcodes[j] << "," << group_label(ds.groups[j]) << "," << role[j]
        << "," << format_double(ds.normalizer.min()(static_cast<Index>(j))) << ","
        << format_double(ds.normalizer.max()(static_cast<Index>(j))) << "," << ds.normalizer.fitted_rows() << "\n";
  }
  write_text_atomic(path, out.str());
}

}  // namespace inflnet::data
