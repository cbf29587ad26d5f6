#pragma once

#include <array>
#include <string>
#include <vector>

#include "inflnet/nn/init.hpp"
#include "inflnet/nn/tensor.hpp"

namespace inflnet::nn {

// Many-to-one LSTM cell. For each step, oldest first:
//   out    = sigmoid(W_out z + U_out f + b_out)
//   keep   = sigmoid(W_keep z + U_keep f + b_keep)
//   admit  = sigmoid(W_admit z + U_admit f + b_admit)
//   c      = keep * c + admit * tanh(W_c z + U_c f + b_c)
//   f      = out * tanh(c)
// starting from f = 0, c = 0. Only the final f is returned.
class LstmCell {
 public:
  enum Gate : int { Candidate = 0, Output = 1, Keep = 2, Admit = 3 };
  static constexpr int kGates = 4;

  struct Step {
    Matrix f_prev, c_prev;
    Matrix out, keep, admit, candidate;  // post-activation
    Matrix c, tanh_c;
  };
  struct Cache {
    std::vector<Matrix> inputs;
    std::vector<Step> steps;
  };

  LstmCell() = default;
  LstmCell(Index input_width, Index state_size, Index offset = 0, std::string prefix = "lstm");

  Index input_width() const { return input_width_; }
  Index state_size() const { return state_size_; }
  Index param_count() const { return param_count_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }
  const TensorInfo& input_map(int gate) const { return tensors_[static_cast<std::size_t>(3 * gate)]; }
  const TensorInfo& recurrent_map(int gate) const { return tensors_[static_cast<std::size_t>(3 * gate + 1)]; }
  const TensorInfo& intercept(int gate) const { return tensors_[static_cast<std::size_t>(3 * gate + 2)]; }

  // `inputs[l]` is batch x input_width for step l (oldest first). Returns
  // the final internal memory, batch x state_size.
  Matrix forward(ParamSpan params, const std::vector<Matrix>& inputs, Cache* cache = nullptr) const;
  Matrix forward(ParamSpan params, std::vector<Matrix>&& inputs, Cache* cache = nullptr) const;

  // Backpropagation through time from the gradient of the final memory.
  void backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Matrix>& d_final, GradSpan grad) const;

  void initialize(GradSpan params, Rng& rng) const;

 private:
  Index input_width_ = 0;
  Index state_size_ = 0;
  Index param_count_ = 0;
  std::vector<TensorInfo> tensors_;
};

// Plain recurrent cell f = tanh(W z + U f_prev + b), f0 = 0.
class RnnCell {
 public:
  struct Cache {
    std::vector<Matrix> inputs;
    std::vector<Matrix> states;  // states[0] = 0, states[l + 1] after step l
  };

  RnnCell() = default;
  RnnCell(Index input_width, Index state_size, Index offset = 0, std::string prefix = "rnn");

  Index input_width() const { return input_width_; }
  Index state_size() const { return state_size_; }
  Index param_count() const { return param_count_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }

  Matrix forward(ParamSpan params, const std::vector<Matrix>& inputs, Cache* cache = nullptr) const;
  void backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Matrix>& d_final, GradSpan grad) const;
  void initialize(GradSpan params, Rng& rng) const;

 private:
  Index input_width_ = 0;
  Index state_size_ = 0;
  Index param_count_ = 0;
  std::vector<TensorInfo> tensors_;
};

}  // namespace inflnet::nn
