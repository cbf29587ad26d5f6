#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "inflnet/common.hpp"

namespace inflnet::nn {

using Rng = std::mt19937_64;

// Uniform on [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double glorot_bound(Index fan_in, Index fan_out) {
  return std::sqrt(6.0) / std::sqrt(static_cast<double>(fan_in + fan_out));
}

// Fills `out` with i.i.d. draws from U[-b, b], b = sqrt(6) / sqrt(fan_in + fan_out).
void glorot_fill(std::span<double> out, Index fan_in, Index fan_out, Rng& rng);

// A fan_out x fan_in weight matrix drawn as above.
RowMatrix glorot_init(Index fan_in, Index fan_out, Rng& rng);

}  // namespace inflnet::nn
