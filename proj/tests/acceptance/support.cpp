#include "support.hpp"

#include <cmath>
#include <iostream>
#include <random>

namespace acceptance {

FactorData factor_data(const FactorDesign& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  const Index T = d.rows;
  FactorData out;
  out.factors.resize(T, 2);
  for (int k = 0; k < 2; ++k) {
    const double a = d.persistence[k];
    double f = n01(rng);
    for (Index t = 0; t < T; ++t) {
      if (t > 0) f = a * f + std::sqrt(1.0 - a * a) * n01(rng);
      out.factors(t, k) = f;
    }
  }
  Matrix loadings(d.pool, 2);
  for (Index i = 0; i < loadings.size(); ++i) loadings.data()[i] = n01(rng);

  Matrix panel(T, d.pool + 1);
  Vector y(T);
  out.oracle_forecast = Vector::Zero(T);
  for (Index t = 0; t < T; ++t) {
    if (t >= d.horizon) {
      out.oracle_forecast(t) = d.beta[0] * out.factors(t - d.horizon, 0) + d.beta[1] * out.factors(t - d.horizon, 1);
    }
    y(t) = out.oracle_forecast(t) + d.target_sd * n01(rng);
    panel(t, 0) = y(t);
    for (Index i = 0; i < d.pool; ++i) {
      panel(t, 1 + i) = loadings.row(i).dot(out.factors.row(t)) + d.noise_sd * n01(rng);
    }
  }
  const auto splits = inflnet::data::split_samples(T, inflnet::data::SplitSpec::fractions(d.train, d.validation, d.test));
  out.ds = inflnet::data::make_dataset(panel, y, {0}, 0, splits);
  return out;
}

void report(bool pass, int criterion, const std::string& name, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << criterion << "  " << name << "  " << detail << std::endl;
}

}  // namespace acceptance
