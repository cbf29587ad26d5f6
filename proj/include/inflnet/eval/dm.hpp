#pragma once

#include <string>
#include <vector>

#include "inflnet/eval/forecast_run.hpp"

namespace inflnet::eval {

// Largest k with k^3 <= P: lags with |tau| <= P^(1/3) enter the uniform window.
Index dm_truncation(Index P);

// gamma(tau) = (1/P) sum_{t > tau} (d_t - mean)(d_{t-tau} - mean)
double autocovariance(const Eigen::Ref<const Vector>& d, Index lag);

// 2 pi f(0) = gamma(0) + 2 sum_{tau=1}^{k} gamma(tau)
double long_run_variance(const Eigen::Ref<const Vector>& d);

// mean(d) / sqrt(lrv / P). Identically zero d gives 0; a non-positive
// variance estimate (down to rounding level relative to the mean square)
// gives 4 sign(mean).
double dm_statistic(const Eigen::Ref<const Vector>& d);
inline double dm_statistic(const LossDifferential& d) { return dm_statistic(d.values); }

double normal_cdf(double x);
double dm_pvalue(double statistic, bool two_sided = true);
// "***" below 1%, "**" below 5%, "*" below 10%.
std::string significance_stars(double pvalue);

enum class FluctuationVariance { Window, FullSample };

struct FluctuationResult {
  Index window = 0;
  std::vector<Index> centers;  // index of each window's midpoint in d
  Vector statistics;
  double critical_value = 2.77;
};

// Rolling DM-type statistic over windows [j, j + m). With the default
// window-level variance each value is dm_statistic of the window; the
// full-sample option scales the window sum by the whole-sample long-run SD.
FluctuationResult fluctuation_test(const Eigen::Ref<const Vector>& d, Index window,
                                   FluctuationVariance variance = FluctuationVariance::Window);

// m with m / P close to 0.3.
Index default_fluctuation_window(Index P);

struct DmDistribution {
  Vector statistics;   // one per member
  double share_beyond_5 = 0.0;  // |stat| > 1.96
  double share_beyond_1 = 0.0;  // |stat| > 2.576
  double share_members_better_5 = 0.0;  // stat < -1.96: member beats the ensemble
  double median = 0.0;
};

// Delta_k from d_k = e_k^2 - e_ens^2 for each member run.
DmDistribution dm_over_initializations(const std::vector<ForecastRun>& members, const ForecastRun& ensemble_run);

double median(Vector values);

}  // namespace inflnet::eval
