#include "inflnet/nn/lstm.hpp"

#include <cmath>

namespace inflnet::nn {

namespace {

constexpr std::array<const char*, LstmCell::kGates> kGateNames = {"candidate", "output", "keep", "admit"};

Matrix sigmoid(const Matrix& x) {
  return x.unaryExpr([](double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  });
}

void check_steps(const std::vector<Matrix>& inputs, Index width) {
  if (inputs.empty()) throw ShapeError("recurrent cell needs at least one step");
  const Index batch = inputs.front().rows();
  for (const auto& z : inputs) {
    if (z.cols() != width || z.rows() != batch) {
      throw ShapeError("recurrent step input is " + std::to_string(z.rows()) + "x" + std::to_string(z.cols()) +
                       ", expected " + std::to_string(batch) + "x" + std::to_string(width));
    }
  }
}

}  // namespace

LstmCell::LstmCell(Index input_width, Index state_size, Index offset, std::string prefix)
    : input_width_(input_width), state_size_(state_size) {
  if (input_width < 1 || state_size < 1) throw ValidationError("LSTM input width and state size must be positive");
  Index at = offset;
  for (int g = 0; g < kGates; ++g) {
    const std::string id = prefix + "." + kGateNames[static_cast<std::size_t>(g)];
    tensors_.push_back({id + ".W", state_size, input_width, at});
    at += state_size * input_width;
    tensors_.push_back({id + ".U", state_size, state_size, at});
    at += state_size * state_size;
    tensors_.push_back({id + ".b", state_size, 1, at});
    at += state_size;
  }
  param_count_ = at - offset;
}

Matrix LstmCell::forward(ParamSpan params, std::vector<Matrix>&& inputs, Cache* cache) const {
  check_steps(inputs, input_width_);
  const Index batch = inputs.front().rows();
  Matrix f = Matrix::Zero(batch, state_size_);
  Matrix c = Matrix::Zero(batch, state_size_);
  if (cache) cache->steps.clear();

  auto pre = [&](int gate, const Matrix& z, const Matrix& f_prev) {
    Matrix a = z * view(params, input_map(gate)).transpose();
    a.noalias() += f_prev * view(params, recurrent_map(gate)).transpose();
    a.rowwise() += view(params, intercept(gate)).col(0).transpose();
    return a;
  };

  for (const auto& z : inputs) {
    Step s;
    s.out = sigmoid(pre(Output, z, f));
    s.keep = sigmoid(pre(Keep, z, f));
    s.admit = sigmoid(pre(Admit, z, f));
    s.candidate = pre(Candidate, z, f).array().tanh();
    Matrix c_next = s.keep.cwiseProduct(c) + s.admit.cwiseProduct(s.candidate);
    s.tanh_c = c_next.array().tanh();
    Matrix f_next = s.out.cwiseProduct(s.tanh_c);
    if (cache) {
      s.f_prev = std::move(f);
      s.c_prev = std::move(c);
      s.c = c_next;
      cache->steps.push_back(std::move(s));
    }
    f = std::move(f_next);
    c = std::move(c_next);
  }
  if (cache) cache->inputs = std::move(inputs);
  return f;
}

Matrix LstmCell::forward(ParamSpan params, const std::vector<Matrix>& inputs, Cache* cache) const {
  return forward(params, std::vector<Matrix>(inputs), cache);
}

void LstmCell::backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Matrix>& d_final,
                        GradSpan grad) const {
  Matrix d_f = d_final;
  Matrix d_c = Matrix::Zero(d_final.rows(), state_size_);
  std::array<Matrix, kGates> d_pre;
  for (auto l = static_cast<Index>(cache.steps.size()) - 1; l >= 0; --l) {
    const Step& s = cache.steps[static_cast<std::size_t>(l)];
    const Matrix& z = cache.inputs[static_cast<std::size_t>(l)];

    d_c.array() += d_f.array() * s.out.array() * (1.0 - s.tanh_c.array().square());
    d_pre[Output] = (d_f.array() * s.tanh_c.array() * s.out.array() * (1.0 - s.out.array())).matrix();
    d_pre[Keep] = (d_c.array() * s.c_prev.array() * s.keep.array() * (1.0 - s.keep.array())).matrix();
    d_pre[Admit] = (d_c.array() * s.candidate.array() * s.admit.array() * (1.0 - s.admit.array())).matrix();
    d_pre[Candidate] = (d_c.array() * s.admit.array() * (1.0 - s.candidate.array().square())).matrix();

    Matrix d_f_prev = Matrix::Zero(d_f.rows(), state_size_);
    for (int g = 0; g < kGates; ++g) {
      const Matrix& a = d_pre[static_cast<std::size_t>(g)];
      view(grad, input_map(g)).noalias() += a.transpose() * z;
      if (l > 0) view(grad, recurrent_map(g)).noalias() += a.transpose() * s.f_prev;
      view(grad, intercept(g)).col(0) += a.colwise().sum().transpose();
      d_f_prev.noalias() += a * view(params, recurrent_map(g));
    }
    d_f = std::move(d_f_prev);
    d_c = (d_c.array() * s.keep.array()).matrix();
  }
}

void LstmCell::initialize(GradSpan params, Rng& rng) const {
  for (int g = 0; g < kGates; ++g) {
    for (const auto* t : {&input_map(g), &recurrent_map(g)}) {
      glorot_fill(params.subspan(static_cast<std::size_t>(t->offset), static_cast<std::size_t>(t->size())), t->cols,
                  t->rows, rng);
    }
    const auto& b = intercept(g);
    std::fill_n(params.begin() + b.offset, b.size(), 0.0);
  }
}

RnnCell::RnnCell(Index input_width, Index state_size, Index offset, std::string prefix)
    : input_width_(input_width), state_size_(state_size) {
  if (input_width < 1 || state_size < 1) throw ValidationError("RNN input width and state size must be positive");
  tensors_.push_back({prefix + ".W", state_size, input_width, offset});
  tensors_.push_back({prefix + ".U", state_size, state_size, offset + state_size * input_width});
  tensors_.push_back({prefix + ".b", state_size, 1, offset + state_size * (input_width + state_size)});
  param_count_ = state_size * (input_width + state_size + 1);
}

Matrix RnnCell::forward(ParamSpan params, const std::vector<Matrix>& inputs, Cache* cache) const {
  check_steps(inputs, input_width_);
  Matrix f = Matrix::Zero(inputs.front().rows(), state_size_);
  if (cache) {
    cache->inputs = inputs;
    cache->states.assign(1, f);
  }
  for (const auto& z : inputs) {
    Matrix a = z * view(params, tensors_[0]).transpose();
    a.noalias() += f * view(params, tensors_[1]).transpose();
    a.rowwise() += view(params, tensors_[2]).col(0).transpose();
    f = a.array().tanh();
    if (cache) cache->states.push_back(f);
  }
  return f;
}

void RnnCell::backward(ParamSpan params, const Cache& cache, const Eigen::Ref<const Matrix>& d_final,
                       GradSpan grad) const {
  Matrix d_f = d_final;
  for (auto l = static_cast<Index>(cache.inputs.size()) - 1; l >= 0; --l) {
    const Matrix& f = cache.states[static_cast<std::size_t>(l + 1)];
    const Matrix& f_prev = cache.states[static_cast<std::size_t>(l)];
    Matrix a = (d_f.array() * (1.0 - f.array().square())).matrix();
    view(grad, tensors_[0]).noalias() += a.transpose() * cache.inputs[static_cast<std::size_t>(l)];
    view(grad, tensors_[1]).noalias() += a.transpose() * f_prev;
    view(grad, tensors_[2]).col(0) += a.colwise().sum().transpose();
    d_f = a * view(params, tensors_[1]);
  }
}

void RnnCell::initialize(GradSpan params, Rng& rng) const {
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& t = tensors_[i];
    glorot_fill(params.subspan(static_cast<std::size_t>(t.offset), static_cast<std::size_t>(t.size())), t.cols, t.rows,
                rng);
  }
  std::fill_n(params.begin() + tensors_[2].offset, tensors_[2].size(), 0.0);
}

}  // namespace inflnet::nn
