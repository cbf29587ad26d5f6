#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "inflnet/common.hpp"

namespace inflnet::bench {

//   pi_t  = tau_t + exp(h_t / 2) eps_t
//   tau_t = tau_{t-1} + u_t,   u_t ~ N(0, omega2_tau)
//   h_t   = h_{t-1} + v_t,     v_t ~ N(0, omega2_h)
// with tau_1 ~ N(0, V_tau), h_1 ~ N(0, V_h) and inverse-gamma priors on the
// two state variances.
struct UcsvConfig {
  Index draws = 10000;  // kept draws
  Index burn_in = 2000;
  std::uint64_t seed = 0;
  double v_tau = 0.12;
  double v_h = 0.12;
  double prior_shape_tau = 3.0;
  double prior_scale_tau = 0.06;
  double prior_shape_h = 3.0;
  double prior_scale_h = 0.06;
  double log_offset = 1e-4;  // c in log((pi - tau)^2 + c)
  double scale = 100.0;      // series is multiplied by this before fitting
  Index mcse_batches = 20;

  void validate() const;
};

struct UcsvResult {
  double forecast = 0.0;      // posterior mean of tau_T, original units
  double tau_last_mean = 0.0; // fitted units
  double tau_last_sd = 0.0;
  double tau_last_mcse = 0.0; // batch-means Monte Carlo standard error
  Vector tau_mean;            // fitted units
  Vector h_mean;
  std::vector<double> tau_last_draws;
  std::vector<double> omega2_tau_draws;
  std::vector<double> omega2_h_draws;
};

UcsvResult ucsv_fit(const Eigen::Ref<const Vector>& series, const UcsvConfig& cfg = {});

// 7-component normal mixture approximating log chi-square(1).
struct LogChi2Mixture {
  static constexpr int kComponents = 7;
  static const double prob[kComponents];
  static const double mean[kComponents];
  static const double var[kComponents];
};

// Draw from N(P^{-1} b, P^{-1}) for a symmetric positive definite tridiagonal
// precision with diagonal `diag` and off-diagonal `off`.
Vector sample_tridiagonal(const Vector& diag, const Vector& off, const Vector& b, std::mt19937_64& rng);

// Mean only.
Vector solve_tridiagonal(const Vector& diag, const Vector& off, const Vector& b);

// Batch-means Monte Carlo standard error of the mean of `draws`.
double batch_means_se(const std::vector<double>& draws, Index batches);

}  // namespace inflnet::bench
