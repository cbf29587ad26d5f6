#include "inflnet/eval/forecast_run.hpp"

#include <cmath>
#include <sstream>

#include "inflnet/io.hpp"

namespace inflnet::eval {

void ForecastRun::validate() const {
  if (forecasts.size() != realized.size() || static_cast<Index>(dates.size()) != forecasts.size()) {
    throw ShapeError("forecast run '" + model + "' has misaligned dates, forecasts and realized values");
  }
  if (horizon < 1) throw ValidationError("forecast run '" + model + "' has a non-positive horizon");
}

ForecastRun ForecastRun::slice(Index begin, Index end) const {
  if (begin < 0 || end > size() || begin > end) throw ValidationError("forecast run slice out of range");
  ForecastRun out = *this;
  out.dates.assign(dates.begin() + begin, dates.begin() + end);
  out.forecasts = forecasts.segment(begin, end - begin);
  out.realized = realized.segment(begin, end - begin);
  return out;
}

std::string serialize_run(const ForecastRun& run) {
  run.validate();
  std::ostringstream out;
  out << "date,horizon,forecast,realized\n";
  for (Index i = 0; i < run.size(); ++i) {
    out << run.dates[static_cast<std::size_t>(i)].to_string() << "," << run.horizon << ","
        << format_double(run.forecasts(i)) << "," << format_double(run.realized(i)) << "\n";
  }
  return out.str();
}

ForecastRun parse_run(const std::string& text, std::string model) {
  const auto table = parse_csv(text);
  if (table.header != std::vector<std::string>{"date", "horizon", "forecast", "realized"}) {
    throw ParseError("forecast CSV must have header date,horizon,forecast,realized");
  }
  ForecastRun run;
  run.model = std::move(model);
  const auto n = static_cast<Index>(table.rows.size());
  run.forecasts.resize(n);
  run.realized.resize(n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    const std::string where = "forecast CSV row " + std::to_string(i + 2);
    if (row.size() != 4) throw ParseError(where + ": expected 4 fields");
    try {
      run.dates.push_back(data::YearMonth::parse(row[0]));
      const Index h = std::stol(row[1]);
      if (i == 0) run.horizon = h;
      if (h != run.horizon) throw ParseError(where + ": mixed horizons");
      run.forecasts(i) = std::stod(row[2]);
      run.realized(i) = std::stod(row[3]);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  run.validate();
  return run;
}

void write_run(const std::string& path, const ForecastRun& run) { write_text_atomic(path, serialize_run(run)); }

ForecastRun read_run(const std::string& path, std::string model) { return parse_run(read_text(path), std::move(model)); }

void check_aligned(const ForecastRun& a, const ForecastRun& b) {
  a.validate();
  b.validate();
  if (a.horizon != b.horizon) throw ValidationError("runs '" + a.model + "' and '" + b.model + "' differ in horizon");
  if (a.dates != b.dates) throw ValidationError("runs '" + a.model + "' and '" + b.model + "' cover different dates");
}

ForecastRun ensemble(const std::vector<ForecastRun>& runs, std::string model) {
  if (runs.empty()) throw ValidationError("ensemble needs at least one run");
  ForecastRun out = runs.front();
  for (std::size_t k = 1; k < runs.size(); ++k) {
    check_aligned(runs.front(), runs[k]);
    out.forecasts += runs[k].forecasts;
  }
  if (runs.size() > 1) out.forecasts /= static_cast<double>(runs.size());
  out.seed.reset();
  out.model = model.empty() ? runs.front().model : std::move(model);
  return out;
}

double rmse(const Eigen::Ref<const Vector>& errors) {
  if (errors.size() == 0) throw ValidationError("RMSE of an empty series");
  return std::sqrt(errors.squaredNorm() / static_cast<double>(errors.size()));
}

double loss_value(const ForecastRun& run, Loss loss) {
  run.validate();
  const Vector e = run.errors();
  if (e.size() == 0) throw ValidationError("loss of an empty run");
  return loss == Loss::Rmse ? rmse(e) : e.cwiseAbs().mean();
}

double loss_ratio(const ForecastRun& candidate, const ForecastRun& benchmark, Loss loss) {
  check_aligned(candidate, benchmark);
  const double denom = loss_value(benchmark, loss);
  if (denom == 0.0) throw DomainError("benchmark '" + benchmark.model + "' has zero loss");
  return loss_value(candidate, loss) / denom;
}

LossDifferential loss_differential(const ForecastRun& first, const ForecastRun& second, Loss loss) {
  check_aligned(first, second);
  const Vector a = first.errors();
  const Vector b = second.errors();
  LossDifferential d;
  d.horizon = first.horizon;
  d.values = loss == Loss::Rmse ? Vector(a.array().square() - b.array().square())
                                : Vector(a.array().abs() - b.array().abs());
  return d;
}

}  // namespace inflnet::eval
