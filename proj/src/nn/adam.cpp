#include "inflnet/nn/adam.hpp"

#include <cmath>

namespace inflnet::nn {

void adam_step(AdamState& state, Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grad) {
  if (params.size() != grad.size() || state.first_moment.size() != params.size()) {
    throw ShapeError("Adam state, parameters and gradient sizes differ");
  }
  const auto& c = state.config;
  ++state.step;
  state.first_moment = c.beta1 * state.first_moment + (1.0 - c.beta1) * grad;
  state.second_moment = c.beta2 * state.second_moment + (1.0 - c.beta2) * grad.cwiseAbs2();
  const double t = static_cast<double>(state.step);
  const double correct1 = 1.0 - std::pow(c.beta1, t);
  const double correct2 = 1.0 - std::pow(c.beta2, t);
  params.array() -= c.learning_rate * (state.first_moment.array() / correct1) /
                    ((state.second_moment.array() / correct2).sqrt() + c.epsilon);
}

}  // namespace inflnet::nn
