#pragma once

#include "inflnet/common.hpp"

namespace inflnet::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  Vector first_moment;
  Vector second_moment;
  long step = 0;

  AdamState() = default;
  AdamState(Index size, AdamConfig cfg = {})
      : config(cfg), first_moment(Vector::Zero(size)), second_moment(Vector::Zero(size)) {}
};

// One bias-corrected Adam update of `params` in place.
void adam_step(AdamState& state, Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grad);

}  // namespace inflnet::nn
