#pragma once

#include "inflnet/common.hpp"

namespace inflnet::bench {

// pi_t = c + phi * pi_{t-1} + nu_t
struct Ar1Fit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual_variance = 0.0;
  Index observations = 0;
};

// Least squares on the pairs (pi_{t-1}, pi_t) of `series`.
Ar1Fit fit_ar1(const Eigen::Ref<const Vector>& series);

// c (1 - phi^h) / (1 - phi) + phi^h pi_t; at phi == 1 this falls back to
// iterating the one-step map, which gives c h + pi_t.
double ar1_forecast(const Ar1Fit& fit, double last, Index horizon);

// h-fold application of x -> c + phi x.
double ar1_iterate(const Ar1Fit& fit, double last, Index horizon);

}  // namespace inflnet::bench
