#include "inflnet/nn/dense.hpp"

namespace inflnet::nn {

DenseStack::DenseStack(Index input_width, Index nodes, Index layers, Index offset, std::string prefix)
    : input_width_(input_width), nodes_(nodes), layers_(layers) {
  if (input_width < 1) throw ValidationError("dense input width must be positive");
  if (layers < 0) throw ValidationError("dense layer count must be non-negative");
  if (layers > 0 && nodes < 1) throw ValidationError("dense node count must be positive");
  Index at = offset;
  Index in = input_width;
  for (Index i = 0; i <= layers; ++i) {
    const Index out = i < layers ? nodes : 1;
    const std::string id = prefix + "." + std::to_string(i + 1);
    tensors_.push_back({id + ".W", out, in, at});
    at += out * in;
    tensors_.push_back({id + ".b", out, 1, at});
    at += out;
    in = out;
  }
  param_count_ = at - offset;
}

Vector DenseStack::forward(ParamSpan params, const Eigen::Ref<const Matrix>& x, Cache* cache) const {
  if (x.cols() != input_width_) {
    throw ShapeError("dense input has " + std::to_string(x.cols()) + " columns, expected " +
                     std::to_string(input_width_));
  }
  if (cache) {
    cache->activations.assign(1, x);
    cache->pre.clear();
  }
  Matrix a = x;
  for (Index i = 0; i < layers_; ++i) {
    auto w = view(params, weight(i));
    auto b = view(params, bias(i));
    Matrix h = a * w.transpose();
    h.rowwise() += b.col(0).transpose();
    a = h.cwiseMax(0.0);
    if (cache) {
      cache->pre.push_back(std::move(h));
      cache->activations.push_back(a);
    }
  }
  auto w = view(params, weight(layers_));
  const double b = params[static_cast<std::size_t>(bias(layers_).offset)];
  Vector out = a * w.row(0).transpose();
  out.array() += b;
  return out;
}

void DenseStack::backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Vector>& d_out, GradSpan grad,
                          Matrix* d_input) const {
  const auto& acts = cache.activations;
  {
    auto gw = view(grad, weight(layers_));
    gw.row(0) += d_out.transpose() * acts[static_cast<std::size_t>(layers_)];
    grad[static_cast<std::size_t>(bias(layers_).offset)] += d_out.sum();
  }
  if (layers_ == 0 && d_input == nullptr) return;

  Matrix d_act = d_out * view(params, weight(layers_)).row(0);  // batch x width of the last activation
  for (Index i = layers_ - 1; i >= 0; --i) {
    const Matrix& h = cache.pre[static_cast<std::size_t>(i)];
    Matrix d_pre = (h.array() > 0.0).select(d_act, 0.0);  // ReLu'(0) = 0
    view(grad, weight(i)).noalias() += d_pre.transpose() * acts[static_cast<std::size_t>(i)];
    view(grad, bias(i)).col(0) += d_pre.colwise().sum().transpose();
    if (i > 0 || d_input != nullptr) d_act = d_pre * view(params, weight(i));
  }
  if (d_input != nullptr) *d_input = std::move(d_act);
}

void DenseStack::initialize(GradSpan params, Rng& rng) const {
  for (Index i = 0; i <= layers_; ++i) {
    const auto& w = weight(i);
    glorot_fill(params.subspan(static_cast<std::size_t>(w.offset), static_cast<std::size_t>(w.size())), w.cols, w.rows,
                rng);
    const auto& b = bias(i);
    std::fill_n(params.begin() + b.offset, b.size(), 0.0);
  }
}

}  // namespace inflnet::nn
