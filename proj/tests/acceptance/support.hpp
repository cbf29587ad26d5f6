#pragma once

#include <cstdint>
#include <string>

#include "inflnet/data/dataset.hpp"

namespace acceptance {

using inflnet::Index;
using inflnet::Matrix;
using inflnet::Vector;

// Two AR(1) factors f_t with unit variance, a panel x_it = lambda_i' f_t +
// noise_sd * e_it and a target y_t = beta' f_{t-h} + target_sd * u_t stored
// as panel column 0 (the w block); the other columns form the pool.
struct FactorDesign {
  Index rows = 600;
  Index pool = 30;
  Index horizon = 1;
  double persistence[2] = {0.8, 0.5};
  double beta[2] = {1.0, -0.7};
  double noise_sd = 0.3;
  double target_sd = 0.5;
  double train = 0.5;
  double validation = 0.2;
  double test = 0.3;
};

struct FactorData {
  inflnet::data::PreparedDataset ds;
  Matrix factors;
  // E[y_t | f_{t-h}], the infeasible generator forecast of each row.
  Vector oracle_forecast;
};

FactorData factor_data(const FactorDesign& design, std::uint64_t seed);

void report(bool pass, int criterion, const std::string& name, const std::string& detail);

}  // namespace acceptance
