#pragma once

#include "inflnet/models/spec.hpp"
#include "inflnet/nn/train.hpp"

namespace inflnet::models {

struct ReferenceConfig {
  NetworkSpec spec;  // N and M left at 0; bind them to a dataset
  nn::TrainConfig train;
};

// Tuned configuration of each architecture on the monthly US panel.
ReferenceConfig reference_config(ModelKind kind);

}  // namespace inflnet::models
