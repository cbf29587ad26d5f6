#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "inflnet/nn/adam.hpp"
#include "inflnet/nn/init.hpp"
#include "inflnet/nn/tensor.hpp"

namespace inflnet::nn {

// batch_size == kFullBatch trains on every row at once (no shuffling).
inline constexpr Index kFullBatch = 0;

struct TrainConfig {
  Index epochs = 200;
  Index batch_size = 128;
  std::uint64_t seed = 0;
  AdamConfig adam;

  void validate() const {
    if (epochs < 1) throw ValidationError("epochs must be at least 1");
    if (batch_size < 0) throw ValidationError("batch size must be positive or full-batch");
  }
};

struct TrainResult {
  Vector params;
  std::vector<double> loss_history;  // mean squared error per epoch, before each update
};

// Anything with a flat parameter vector, a batched forward pass and a
// matching backward pass.
template <class Net>
concept TrainableNet = requires(const Net& net, ParamSpan p, GradSpan g, const Matrix& x, const Vector& d,
                                typename Net::Cache cache, Rng& rng) {
  { net.param_count() } -> std::convertible_to<Index>;
  { net.forward(p, x, &cache) } -> std::convertible_to<Vector>;
  net.backward(p, cache, d, g);
  net.initialize(g, rng);
};

// Mean squared error on (x, y) and its exact gradient.
template <TrainableNet Net>
double loss_and_gradient(const Net& net, const Vector& params, const Eigen::Ref<const Matrix>& x,
                         const Eigen::Ref<const Vector>& y, Vector& grad) {
  typename Net::Cache cache;
  const Vector pred = net.forward(as_span(params), x, &cache);
  const Vector resid = pred - y;
  const double n = static_cast<double>(y.size());
  grad = Vector::Zero(params.size());
  net.backward(as_span(params), cache, Vector((2.0 / n) * resid), as_span(grad));
  return resid.squaredNorm() / n;
}

template <TrainableNet Net>
Vector initial_params(const Net& net, std::uint64_t seed) {
  Vector p(net.param_count());
  Rng rng(seed);
  net.initialize(as_span(p), rng);
  return p;
}

// Adam on the minibatch mean squared error. Each epoch reshuffles the rows
// with a generator seeded from `cfg.seed`, then sweeps them in batches.
template <TrainableNet Net>
TrainResult train(const Net& net, Vector params, const Matrix& x, const Vector& y, const TrainConfig& cfg) {
  cfg.validate();
  if (x.rows() == 0 || x.rows() != y.size()) throw ValidationError("training set is empty or misaligned");
  if (params.size() != net.param_count()) throw ShapeError("parameter vector does not match the network");

  const Index n = x.rows();
  const Index batch = (cfg.batch_size == kFullBatch || cfg.batch_size >= n) ? n : cfg.batch_size;
  AdamState adam(params.size(), cfg.adam);
  Rng shuffle_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});

  TrainResult result;
  result.loss_history.reserve(static_cast<std::size_t>(cfg.epochs));
  Vector grad;
  for (Index epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0.0;
    if (batch == n) {
      epoch_loss = loss_and_gradient(net, params, x, y, grad);
      if (!std::isfinite(epoch_loss) || !grad.allFinite()) {
        throw TrainingError("non-finite loss or gradient at epoch " + std::to_string(epoch + 1));
      }
      adam_step(adam, params, grad);
    } else {
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(shuffle_rng() % (i + 1));
        std::swap(order[i], order[j]);
      }
      for (Index start = 0; start < n; start += batch) {
        const Index len = std::min(batch, n - start);
        std::vector<Index> idx(order.begin() + start, order.begin() + start + len);
        const Matrix xb = x(idx, Eigen::all);
        const Vector yb = y(idx);
        const double loss = loss_and_gradient(net, params, xb, yb, grad);
        if (!std::isfinite(loss) || !grad.allFinite()) {
          throw TrainingError("non-finite loss or gradient at epoch " + std::to_string(epoch + 1) + ", batch starting " +
                              std::to_string(start));
        }
        epoch_loss += loss * static_cast<double>(len);
        adam_step(adam, params, grad);
      }
      epoch_loss /= static_cast<double>(n);
    }
    result.loss_history.push_back(epoch_loss);
  }
  result.params = std::move(params);
  return result;
}

// Glorot initialization from `cfg.seed`, then train().
template <TrainableNet Net>
TrainResult fit(const Net& net, const Matrix& x, const Vector& y, const TrainConfig& cfg) {
  return train(net, initial_params(net, cfg.seed), x, y, cfg);
}

}  // namespace inflnet::nn
