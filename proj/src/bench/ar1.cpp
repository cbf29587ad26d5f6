#include "inflnet/bench/ar1.hpp"

#include <cmath>

namespace inflnet::bench {

Ar1Fit fit_ar1(const Eigen::Ref<const Vector>& series) {
  const Index n = series.size() - 1;
  if (n < 3) throw ValidationError("AR(1) needs at least 4 observations");
  const Vector x = series.head(n);
  const Vector y = series.tail(n);
  const double mx = x.mean();
  const double my = y.mean();
  const double sxx = (x.array() - mx).square().sum();
  if (sxx == 0.0) throw DomainError("AR(1) regressor is constant");
  const double sxy = ((x.array() - mx) * (y.array() - my)).sum();
  Ar1Fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const Vector resid = y.array() - fit.intercept - fit.slope * x.array();
  fit.residual_variance = resid.squaredNorm() / static_cast<double>(n - 2);
  fit.observations = n;
  return fit;
}

double ar1_iterate(const Ar1Fit& fit, double last, Index horizon) {
  if (horizon < 1) throw ValidationError("forecast horizon must be at least 1");
  double v = last;
  for (Index i = 0; i < horizon; ++i) v = fit.intercept + fit.slope * v;
  return v;
}

double ar1_forecast(const Ar1Fit& fit, double last, Index horizon) {
  if (horizon < 1) throw ValidationError("forecast horizon must be at least 1");
  if (fit.slope == 1.0) return ar1_iterate(fit, last, horizon);
  const double ph = std::pow(fit.slope, static_cast<double>(horizon));
  return fit.intercept * (1.0 - ph) / (1.0 - fit.slope) + ph * last;
}

}  // namespace inflnet::bench
