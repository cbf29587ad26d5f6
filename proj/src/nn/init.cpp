#include "inflnet/nn/init.hpp"

namespace inflnet::nn {

void glorot_fill(std::span<double> out, Index fan_in, Index fan_out, Rng& rng) {
  if (fan_in < 1 || fan_out < 1) throw ValidationError("Glorot fan sizes must be positive");
  const double bound = glorot_bound(fan_in, fan_out);
  for (double& w : out) w = (2.0 * uniform01(rng) - 1.0) * bound;
}

RowMatrix glorot_init(Index fan_in, Index fan_out, Rng& rng) {
  RowMatrix w(fan_out, fan_in);
  glorot_fill(std::span<double>(w.data(), static_cast<std::size_t>(w.size())), fan_in, fan_out, rng);
  return w;
}

}  // namespace inflnet::nn
