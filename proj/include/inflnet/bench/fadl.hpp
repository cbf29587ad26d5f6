#pragma once

#include <cstdint>

#include "inflnet/common.hpp"

namespace inflnet::bench {

struct Standardized {
  Matrix values;
  Vector mean;
  Vector sd;
};

// Column-wise (x - mean) / sd with the population SD; constant columns are
// rejected.
Standardized standardize(const Eigen::Ref<const Matrix>& x);

struct Principal {
  Matrix scores;    // T x r, scores' scores / T = I
  Matrix loadings;  // N x r, orthonormal columns
  Vector eigenvalues;  // of X'X / T, descending
};

// Principal components of an already standardized panel.
Principal principal_components(const Eigen::Ref<const Matrix>& x, Index factors);

struct FadlConfig {
  Index lags = 4;      // p
  Index factors = 4;   // r
  Index bootstrap = 5000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FadlFit {
  Vector coefficients;    // [intercept, pi_t .. pi_{t-p+1}, f_1t .. f_rt]
  Vector residuals;
  Vector last_regressors; // design row at the forecast origin
  double ols_forecast = 0.0;
  double forecast = 0.0;  // bootstrap mean
  Vector bootstrap;       // bootstrap forecast draws
};

// Direct h-step projection of pi_{t+h} on an intercept, p lags of pi and r
// principal-component factors of `panel` dated t. Both inputs end at the
// forecast origin; rows must line up.
FadlFit fadl_fit_forecast(const Eigen::Ref<const Vector>& pi, const Eigen::Ref<const Matrix>& panel, Index horizon,
                          const FadlConfig& cfg = {});

// Same regression with the factors supplied directly (already aligned with pi).
FadlFit fadl_from_factors(const Eigen::Ref<const Vector>& pi, const Eigen::Ref<const Matrix>& factors, Index horizon,
                          const FadlConfig& cfg);

}  // namespace inflnet::bench
