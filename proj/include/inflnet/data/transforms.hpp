#pragma once

#include <span>
#include <vector>

#include "inflnet/common.hpp"

namespace inflnet::data {

// Number of leading observations a tcode consumes.
int tcode_order(int code);

// FRED-MD stationarity transform. 1: x, 2: dx, 3: d2x, 4: log x, 5: dlog x,
// 6: d2log x, 7: d(x_t / x_{t-1} - 1). The result is shorter than the input
// by tcode_order(code). Missing (NaN) inputs propagate.
std::vector<double> apply_tcode(std::span<const double> series, int code);

// Replace each NaN by the mean of the observed cells of its column. When
// `rows_for_mean` is given only the first that many rows enter the mean.
Matrix impute_missing(const Matrix& values, Index rows_for_mean = -1);

}  // namespace inflnet::data
