#include "inflnet/data/table.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace inflnet::data {

namespace {

constexpr std::array<std::string_view, kGroupCount> kLabels = {
    "output_income", "labor_market", "housing",  "consumption",
    "money_credit",  "interest_exchange", "prices", "stock_market",
};

using G = EconomicGroup;

// McCracken-Ng group assignment of the FRED-MD monthly series.
const std::unordered_map<std::string_view, EconomicGroup>& fred_md_map() {
  static const std::unordered_map<std::string_view, EconomicGroup> map = {
      {"RPI", G::OutputIncome}, {"W875RX1", G::OutputIncome}, {"INDPRO", G::OutputIncome},
      {"IPFPNSS", G::OutputIncome}, {"IPFINAL", G::OutputIncome}, {"IPCONGD", G::OutputIncome},
      {"IPDCONGD", G::OutputIncome}, {"IPNCONGD", G::OutputIncome}, {"IPBUSEQ", G::OutputIncome},
      {"IPMAT", G::OutputIncome}, {"IPDMAT", G::OutputIncome}, {"IPNMAT", G::OutputIncome},
      {"IPMANSICS", G::OutputIncome}, {"IPB51222S", G::OutputIncome}, {"IPFUELS", G::OutputIncome},
      {"CUMFNS", G::OutputIncome},

      {"HWI", G::LaborMarket}, {"HWIURATIO", G::LaborMarket}, {"CLF16OV", G::LaborMarket},
      {"CE16OV", G::LaborMarket}, {"UNRATE", G::LaborMarket}, {"UEMPMEAN", G::LaborMarket},
      {"UEMPLT5", G::LaborMarket}, {"UEMP5TO14", G::LaborMarket}, {"UEMP15OV", G::LaborMarket},
      {"UEMP15T26", G::LaborMarket}, {"UEMP27OV", G::LaborMarket}, {"CLAIMSx", G::LaborMarket},
      {"PAYEMS", G::LaborMarket}, {"USGOOD", G::LaborMarket}, {"CES1021000001", G::LaborMarket},
      {"USCONS", G::LaborMarket}, {"MANEMP", G::LaborMarket}, {"DMANEMP", G::LaborMarket},
      {"NDMANEMP", G::LaborMarket}, {"SRVPRD", G::LaborMarket}, {"USTPU", G::LaborMarket},
      {"USWTRADE", G::LaborMarket}, {"USTRADE", G::LaborMarket}, {"USFIRE", G::LaborMarket},
      {"USGOVT", G::LaborMarket}, {"CES0600000007", G::LaborMarket}, {"AWOTMAN", G::LaborMarket},
      {"AWHMAN", G::LaborMarket}, {"CES0600000008", G::LaborMarket}, {"CES2000000008", G::LaborMarket},
      {"CES3000000008", G::LaborMarket},

      {"HOUST", G::Housing}, {"HOUSTNE", G::Housing}, {"HOUSTMW", G::Housing},
      {"HOUSTS", G::Housing}, {"HOUSTW", G::Housing}, {"PERMIT", G::Housing},
      {"PERMITNE", G::Housing}, {"PERMITMW", G::Housing}, {"PERMITS", G::Housing},
      {"PERMITW", G::Housing},

      {"DPCERA3M086SBEA", G::Consumption}, {"CMRMTSPLx", G::Consumption}, {"RETAILx", G::Consumption},
      {"ACOGNO", G::Consumption}, {"AMDMNOx", G::Consumption}, {"ANDENOx", G::Consumption},
      {"AMDMUOx", G::Consumption}, {"BUSINVx", G::Consumption}, {"ISRATIOx", G::Consumption},
      {"UMCSENTx", G::Consumption},

      {"M1SL", G::MoneyCredit}, {"M2SL", G::MoneyCredit}, {"M2REAL", G::MoneyCredit},
      {"BOGMBASE", G::MoneyCredit}, {"AMBSL", G::MoneyCredit}, {"TOTRESNS", G::MoneyCredit},
      {"NONBORRES", G::MoneyCredit}, {"BUSLOANS", G::MoneyCredit}, {"REALLN", G::MoneyCredit},
      {"NONREVSL", G::MoneyCredit}, {"CONSPI", G::MoneyCredit}, {"MZMSL", G::MoneyCredit},
      {"DTCOLNVHFNM", G::MoneyCredit}, {"DTCTHFNM", G::MoneyCredit}, {"INVEST", G::MoneyCredit},

      {"FEDFUNDS", G::InterestExchange}, {"CP3Mx", G::InterestExchange}, {"TB3MS", G::InterestExchange},
      {"TB6MS", G::InterestExchange}, {"GS1", G::InterestExchange}, {"GS5", G::InterestExchange},
      {"GS10", G::InterestExchange}, {"AAA", G::InterestExchange}, {"BAA", G::InterestExchange},
      {"COMPAPFFx", G::InterestExchange}, {"TB3SMFFM", G::InterestExchange},
      {"TB6SMFFM", G::InterestExchange}, {"T1YFFM", G::InterestExchange}, {"T5YFFM", G::InterestExchange},
      {"T10YFFM", G::InterestExchange}, {"AAAFFM", G::InterestExchange}, {"BAAFFM", G::InterestExchange},
      {"TWEXMMTH", G::InterestExchange}, {"TWEXAFEGSMTHx", G::InterestExchange},
      {"EXSZUSx", G::InterestExchange}, {"EXJPUSx", G::InterestExchange}, {"EXUSUKx", G::InterestExchange},
      {"EXCAUSx", G::InterestExchange},

      {"WPSFD49207", G::Prices}, {"WPSFD49502", G::Prices}, {"WPSID61", G::Prices},
      {"WPSID62", G::Prices}, {"OILPRICEx", G::Prices}, {"PPICMM", G::Prices},
      {"CPIAUCSL", G::Prices}, {"CPIAPPSL", G::Prices}, {"CPITRNSL", G::Prices},
      {"CPIMEDSL", G::Prices}, {"CUSR0000SAC", G::Prices}, {"CUSR0000SAD", G::Prices},
      {"CUSR0000SAS", G::Prices}, {"CPIULFSL", G::Prices}, {"CUSR0000SA0L2", G::Prices},
      {"CUSR0000SA0L5", G::Prices}, {"PCEPI", G::Prices}, {"DDURRG3M086SBEA", G::Prices},
      {"DNDGRG3M086SBEA", G::Prices}, {"DSERRG3M086SBEA", G::Prices},

      {"S&P 500", G::StockMarket}, {"S&P: indust", G::StockMarket}, {"S&P div yield", G::StockMarket},
      {"S&P PE ratio", G::StockMarket}, {"VXOCLSx", G::StockMarket},
  };
  return map;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(trim(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool is_missing_token(const std::string& s) {
  return s.empty() || s == "NA" || s == "NaN" || s == "nan" || s == "." || s == "#N/A";
}

double parse_cell(const std::string& s, const std::string& origin, int row, std::size_t col) {
  if (is_missing_token(s)) return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(origin + ": row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                     ": cannot parse '" + s + "'");
  }
}

}  // namespace

std::string_view group_label(EconomicGroup group) { return kLabels[static_cast<std::size_t>(group)]; }

EconomicGroup parse_group(std::string_view label) {
  for (std::size_t i = 0; i < kLabels.size(); ++i) {
    if (kLabels[i] == label) return static_cast<EconomicGroup>(i);
  }
  throw ValidationError("unknown economic group '" + std::string(label) + "'");
}

const std::array<EconomicGroup, kGroupCount>& all_groups() {
  static const std::array<EconomicGroup, kGroupCount> groups = {
      G::OutputIncome, G::LaborMarket, G::Housing,  G::Consumption,
      G::MoneyCredit,  G::InterestExchange, G::Prices, G::StockMarket};
  return groups;
}

std::optional<EconomicGroup> fred_md_group(std::string_view series_name) {
  const auto& map = fred_md_map();
  auto it = map.find(series_name);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& fred_md_cpi_block() {
  static const std::vector<std::string> block = {
      "CPIAUCSL", "CPIAPPSL", "CPITRNSL", "CPIMEDSL", "CUSR0000SAC",
      "CUSR0000SAD", "CUSR0000SAS", "CPIULFSL", "CUSR0000SA0L2", "CUSR0000SA0L5"};
  return block;
}

Index RawSeriesTable::column(std::string_view name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return static_cast<Index>(j);
  }
  throw ValidationError("unknown series '" + std::string(name) + "'");
}

std::size_t RawSeriesTable::missing_count() const {
  std::size_t n = 0;
  for (Index i = 0; i < values.size(); ++i) n += std::isnan(values.data()[i]) ? 1 : 0;
  return n;
}

void RawSeriesTable::validate() const {
  const auto n = static_cast<std::size_t>(values.cols());
  if (names.size() != n || tcodes.size() != n || groups.size() != n) {
    throw ValidationError("table metadata does not match the number of series");
  }
  if (dates.size() != static_cast<std::size_t>(values.rows())) {
    throw ValidationError("table has " + std::to_string(dates.size()) + " dates for " +
                          std::to_string(values.rows()) + " rows");
  }
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (dates[i] - dates[i - 1] != 1) {
      throw ValidationError("dates are not consecutive months: " + dates[i - 1].to_string() + " -> " +
                            dates[i].to_string());
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (tcodes[j] < 1 || tcodes[j] > 7) {
      throw ValidationError("series '" + names[j] + "' has unknown tcode " + std::to_string(tcodes[j]));
    }
  }
}

RawSeriesTable parse_table(const std::string& csv_text, const KeyValueConfig& sidecar, const std::string& origin) {
  std::istringstream in(csv_text);
  std::string line;
  int lineno = 0;

  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      if (!trim(out).empty()) return true;
    }
    return false;
  };

  if (!next_line(line)) throw ParseError(origin + ": empty file");
  auto header = split_csv_line(line);
  if (header.size() < 2) throw ParseError(origin + ": header needs a date column and at least one series");

  RawSeriesTable table;
  table.names.assign(header.begin() + 1, header.end());
  const std::size_t n = table.names.size();
  table.tcodes.assign(n, 0);

  std::vector<std::vector<double>> rows;
  while (next_line(line)) {
    auto fields = split_csv_line(line);
    if (fields.size() != n + 1) {
      throw ParseError(origin + ": row " + std::to_string(lineno) + " has " + std::to_string(fields.size()) +
                       " columns, expected " + std::to_string(n + 1));
    }
    std::string first = fields[0];
    for (auto& c : first) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (first.rfind("transform", 0) == 0 || first == "tcode") {
      for (std::size_t j = 0; j < n; ++j) {
        double code = parse_cell(fields[j + 1], origin, lineno, j + 1);
        if (std::isnan(code) || code != std::floor(code)) {
          throw ValidationError(origin + ": series '" + table.names[j] + "' has an invalid tcode '" +
                                fields[j + 1] + "'");
        }
        table.tcodes[j] = static_cast<int>(code);
      }
      continue;
    }
    try {
      table.dates.push_back(YearMonth::parse(fields[0]));
    } catch (const ParseError& e) {
      throw ParseError(origin + ": row " + std::to_string(lineno) + ", column 1: " + e.what());
    }
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = parse_cell(fields[j + 1], origin, lineno, j + 1);
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError(origin + ": no data rows");

  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }

  table.groups.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& name = table.names[j];
    if (auto code = sidecar.get("tcode." + name)) {
      try {
        table.tcodes[j] = std::stoi(*code);
      } catch (const std::exception&) {
        throw ValidationError("sidecar tcode for '" + name + "' is not an integer");
      }
    }
    if (table.tcodes[j] == 0) {
      throw ValidationError(origin + ": no tcode for series '" + name + "' (no Transform row or sidecar entry)");
    }
    if (auto label = sidecar.get("group." + name)) {
      table.groups[j] = parse_group(*label);
    } else if (auto g = fred_md_group(name)) {
      table.groups[j] = *g;
    } else {
      throw ValidationError("no economic group for series '" + name + "'; add 'group." + name +
                            " = <label>' to the sidecar config");
    }
  }
  table.validate();
  return table;
}

RawSeriesTable load_table(const std::string& path, const KeyValueConfig& sidecar) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open data file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), sidecar, path);
}

}  // namespace inflnet::data
