#pragma once

#include <utility>
#include <vector>

#include "inflnet/models/spec.hpp"
#include "inflnet/nn/checkpoint.hpp"
#include "inflnet/nn/dense.hpp"
#include "inflnet/nn/lstm.hpp"

namespace inflnet::models {

// One of the five forecasting architectures behind a single flat parameter
// vector laid out as [lstm | dense]. Inputs are the flattened rows produced
// by data::build_supervised for spec.predictors().
class Network {
 public:
  struct Cache {
    nn::LstmCell::Cache lstm;
    nn::DenseStack::Cache dense;
    Matrix memory;
  };

  Network() = default;
  explicit Network(const NetworkSpec& spec);

  const NetworkSpec& spec() const { return spec_; }
  Index param_count() const { return lstm_.param_count() + dense_.param_count(); }
  std::vector<nn::TensorInfo> tensors() const;
  const nn::DenseStack& dense() const { return dense_; }
  const nn::LstmCell& lstm() const { return lstm_; }

  Vector forward(nn::ParamSpan params, const Eigen::Ref<const Matrix>& x, Cache* cache = nullptr) const;
  void backward(nn::ParamSpan params, const Cache& cache, const Eigen::Ref<const Vector>& d_out,
                nn::GradSpan grad) const;
  void initialize(nn::GradSpan params, nn::Rng& rng) const;

  Vector predict(const Vector& params, const Eigen::Ref<const Matrix>& x) const;

  // Final LSTM memory F for each input row (batch x p).
  Matrix memory(const Vector& params, const Eigen::Ref<const Matrix>& x) const;

  // Per-step LSTM inputs, oldest lag first.
  std::vector<Matrix> sequence(const Eigen::Ref<const Matrix>& x) const;

 private:
  Matrix dense_input(const Eigen::Ref<const Matrix>& x, const Matrix& memory) const;
  void check_input(const Eigen::Ref<const Matrix>& x) const;

  NetworkSpec spec_;
  nn::LstmCell lstm_;
  nn::DenseStack dense_;
};

nn::Checkpoint make_checkpoint(const Network& net, const Vector& params);

// Rebuilds the network from the checkpoint's spec line and checks the tensor
// table against it.
std::pair<Network, Vector> load_checkpoint(const nn::Checkpoint& ckpt);

}  // namespace inflnet::models
