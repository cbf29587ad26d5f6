#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inflnet/common.hpp"
#include "inflnet/data/calendar.hpp"
#include "inflnet/kv_config.hpp"

namespace inflnet::data {

// The eight FRED-MD economic groups.
enum class EconomicGroup {
  OutputIncome,
  LaborMarket,
  Housing,
  Consumption,
  MoneyCredit,
  InterestExchange,
  Prices,
  StockMarket,
};

inline constexpr std::size_t kGroupCount = 8;

std::string_view group_label(EconomicGroup group);
EconomicGroup parse_group(std::string_view label);
const std::array<EconomicGroup, kGroupCount>& all_groups();

// Group membership for the standard FRED-MD mnemonics, if known.
std::optional<EconomicGroup> fred_md_group(std::string_view series_name);

// CPI and its nine components in the FRED-MD naming.
const std::vector<std::string>& fred_md_cpi_block();

struct RawSeriesTable {
  std::vector<YearMonth> dates;
  std::vector<std::string> names;
  Matrix values;  // T x N, NaN marks a missing cell
  std::vector<int> tcodes;
  std::vector<EconomicGroup> groups;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
  Index column(std::string_view name) const;  // throws ValidationError
  std::size_t missing_count() const;

  // Checks the monthly-index, tcode and shape invariants.
  void validate() const;
};

// Reads a FRED-MD style CSV: header of series names (first column is the
// date), an optional "Transform:" row of tcodes, then one row per month.
// `sidecar` may carry `tcode.<name>` and `group.<name>` overrides.
RawSeriesTable load_table(const std::string& path, const KeyValueConfig& sidecar = {});
RawSeriesTable parse_table(const std::string& csv_text, const KeyValueConfig& sidecar = {},
                           const std::string& origin = "<csv>");

}  // namespace inflnet::data
