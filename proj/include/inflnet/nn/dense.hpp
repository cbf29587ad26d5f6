#pragma once

#include <string>
#include <vector>

#include "inflnet/nn/init.hpp"
#include "inflnet/nn/tensor.hpp"

namespace inflnet::nn {

// Feed-forward stack with `layers` ReLu hidden layers of `nodes` units and a
// single linear output:
//   a0 = x,  ai = ReLu(Wi a(i-1) + bi),  out = W(Q+1) aQ + b(Q+1).
// With zero hidden layers the stack is a linear map.
class DenseStack {
 public:
  struct Cache {
    std::vector<Matrix> activations;  // activations[0] = input, [i] = ReLu(pre[i-1])
    std::vector<Matrix> pre;          // hidden pre-activations
  };

  DenseStack() = default;
  DenseStack(Index input_width, Index nodes, Index layers, Index offset = 0, std::string prefix = "dense");

  Index input_width() const { return input_width_; }
  Index nodes() const { return nodes_; }
  Index layers() const { return layers_; }
  Index param_count() const { return param_count_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }
  const TensorInfo& weight(Index layer) const { return tensors_[static_cast<std::size_t>(2 * layer)]; }
  const TensorInfo& bias(Index layer) const { return tensors_[static_cast<std::size_t>(2 * layer + 1)]; }

  // x is batch x input_width; returns one prediction per row.
  Vector forward(ParamSpan params, const Eigen::Ref<const Matrix>& x, Cache* cache = nullptr) const;

  // Adds d(sum_b d_out_b * out_b)/d(params) to `grad`. When `d_input` is
  // non-null it receives the gradient with respect to the input rows.
  void backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Vector>& d_out, GradSpan grad,
                Matrix* d_input = nullptr) const;

  // Glorot weights, zero intercepts.
  void initialize(GradSpan params, Rng& rng) const;

 private:
  Index input_width_ = 0;
  Index nodes_ = 0;
  Index layers_ = 0;
  Index param_count_ = 0;
  std::vector<TensorInfo> tensors_;
};

}  // namespace inflnet::nn
