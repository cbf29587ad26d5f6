#include "inflnet/data/transforms.hpp"

#include <cmath>
#include <string>

namespace inflnet::data {

namespace {

std::vector<double> diff(const std::vector<double>& x) {
  std::vector<double> out;
  if (x.size() < 2) return out;
  out.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) out.push_back(x[i] - x[i - 1]);
  return out;
}

std::vector<double> logs(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isnan(x[i]) && x[i] <= 0.0) {
      throw DomainError("log transform of non-positive value " + std::to_string(x[i]) + " at index " +
                        std::to_string(i));
    }
    out[i] = std::log(x[i]);
  }
  return out;
}

}  // namespace

int tcode_order(int code) {
  switch (code) {
    case 1: case 4: return 0;
    case 2: case 5: return 1;
    case 3: case 6: case 7: return 2;
    default: throw ValidationError("unknown tcode " + std::to_string(code));
  }
}

std::vector<double> apply_tcode(std::span<const double> series, int code) {
  const int order = tcode_order(code);
  if (series.size() <= static_cast<std::size_t>(order)) {
    throw ValidationError("series of length " + std::to_string(series.size()) + " too short for tcode " +
                          std::to_string(code));
  }
  std::vector<double> x(series.begin(), series.end());
  switch (code) {
    case 1: return x;
    case 2: return diff(x);
    case 3: return diff(diff(x));
    case 4: return logs(series);
    case 5: return diff(logs(series));
    case 6: return diff(diff(logs(series)));
    case 7: {
      std::vector<double> growth;
      growth.reserve(x.size() - 1);
      for (std::size_t i = 1; i < x.size(); ++i) growth.push_back(x[i] / x[i - 1] - 1.0);
      return diff(growth);
    }
  }
  return x;  // unreachable: tcode_order validated the code
}

Matrix impute_missing(const Matrix& values, Index rows_for_mean) {
  const Index mean_rows = rows_for_mean < 0 ? values.rows() : std::min(rows_for_mean, values.rows());
  Matrix out = values;
  for (Index j = 0; j < values.cols(); ++j) {
    double sum = 0.0;
    Index count = 0;
    for (Index i = 0; i < mean_rows; ++i) {
      if (!std::isnan(values(i, j))) {
        sum += values(i, j);
        ++count;
      }
    }
    if (count == 0) {
      throw ValidationError("column " + std::to_string(j) + " has no observed values to impute from");
    }
    const double mean = sum / static_cast<double>(count);
    for (Index i = 0; i < values.rows(); ++i) {
      if (std::isnan(out(i, j))) out(i, j) = mean;
    }
  }
  return out;
}

}  // namespace inflnet::data
