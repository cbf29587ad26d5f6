#include "inflnet/eval/dm.hpp"

#include <algorithm>
#include <cmath>

namespace inflnet::eval {

Index dm_truncation(Index P) {
  if (P < 1) throw ValidationError("DM truncation needs P >= 1");
  Index k = static_cast<Index>(std::cbrt(static_cast<double>(P)));
  while ((k + 1) * (k + 1) * (k + 1) <= P) ++k;
  while (k > 0 && k * k * k > P) --k;
  return k;
}

double autocovariance(const Eigen::Ref<const Vector>& d, Index lag) {
  const Index P = d.size();
  const double m = d.mean();
  double s = 0.0;
  for (Index t = lag; t < P; ++t) s += (d(t) - m) * (d(t - lag) - m);
  return s / static_cast<double>(P);
}

double long_run_variance(const Eigen::Ref<const Vector>& d) {
  const Index P = d.size();
  const Index k = std::min(dm_truncation(P), P - 1);
  double v = autocovariance(d, 0);
  for (Index lag = 1; lag <= k; ++lag) v += 2.0 * autocovariance(d, lag);
  return v;
}

double dm_statistic(const Eigen::Ref<const Vector>& d) {
  const Index P = d.size();
  if (P < 2) throw ValidationError("DM statistic needs at least two loss differentials");
  if ((d.array() == 0.0).all()) return 0.0;
  const double mean = d.mean();
  const double lrv = long_run_variance(d);
  // A constant series leaves only rounding noise in the centred values.
  const double floor = 1e-24 * d.squaredNorm() / static_cast<double>(P);
  if (!(lrv > floor)) return 4.0 * static_cast<double>((mean > 0) - (mean < 0));
  return mean / std::sqrt(lrv / static_cast<double>(P));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double dm_pvalue(double statistic, bool two_sided) {
  return two_sided ? std::erfc(std::abs(statistic) / std::sqrt(2.0)) : 1.0 - normal_cdf(statistic);
}

std::string significance_stars(double pvalue) {
  if (pvalue < 0.01) return "***";
  if (pvalue < 0.05) return "**";
  if (pvalue < 0.10) return "*";
  return "";
}

Index default_fluctuation_window(Index P) {
  return std::max<Index>(8, static_cast<Index>(std::lround(0.3 * static_cast<double>(P))));
}

FluctuationResult fluctuation_test(const Eigen::Ref<const Vector>& d, Index window, FluctuationVariance variance) {
  const Index P = d.size();
  if (window < 8) throw ValidationError("fluctuation window must be at least 8, got " + std::to_string(window));
  if (window > P) throw ValidationError("fluctuation window exceeds the sample size");
  FluctuationResult out;
  out.window = window;
  const Index count = P - window + 1;
  out.statistics.resize(count);
  double full_sd = 0.0;
  if (variance == FluctuationVariance::FullSample) {
    const double lrv = long_run_variance(d);
    full_sd = lrv > 0.0 ? std::sqrt(lrv) : 0.0;
  }
  for (Index j = 0; j < count; ++j) {
    out.centers.push_back(j + window / 2);
    const auto seg = d.segment(j, window);
    if (variance == FluctuationVariance::Window) {
      out.statistics(j) = dm_statistic(seg);
    } else if ((seg.array() == 0.0).all()) {
      out.statistics(j) = 0.0;
    } else if (full_sd == 0.0) {
      const double m = seg.mean();
      out.statistics(j) = 4.0 * static_cast<double>((m > 0) - (m < 0));
    } else {
      out.statistics(j) = seg.sum() / (std::sqrt(static_cast<double>(window)) * full_sd);
    }
  }
  return out;
}

double median(Vector values) {
  if (values.size() == 0) throw ValidationError("median of an empty series");
  std::sort(values.data(), values.data() + values.size());
  const Index n = values.size();
  return n % 2 ? values(n / 2) : 0.5 * (values(n / 2 - 1) + values(n / 2));
}

DmDistribution dm_over_initializations(const std::vector<ForecastRun>& members, const ForecastRun& ensemble_run) {
  if (members.empty()) throw ValidationError("DM distribution needs at least one member");
  DmDistribution out;
  out.statistics.resize(static_cast<Index>(members.size()));
  Index beyond5 = 0, beyond1 = 0, better = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double s = dm_statistic(loss_differential(members[k], ensemble_run));
    out.statistics(static_cast<Index>(k)) = s;
    beyond5 += std::abs(s) > 1.96;
    beyond1 += std::abs(s) > 2.576;
    better += s < -1.96;
  }
  const double K = static_cast<double>(members.size());
  out.share_beyond_5 = static_cast<double>(beyond5) / K;
  out.share_beyond_1 = static_cast<double>(beyond1) / K;
  out.share_members_better_5 = static_cast<double>(better) / K;
  out.median = median(out.statistics);
  return out;
}

}  // namespace inflnet::eval
