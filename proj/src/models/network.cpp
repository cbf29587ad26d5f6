#include "inflnet/models/network.hpp"

namespace inflnet::models {

Network::Network(const NetworkSpec& spec) : spec_(spec) {
  spec_.validate();
  if (has_lstm(spec_.kind)) {
    lstm_ = nn::LstmCell(spec_.lstm_input_width(), spec_.state, 0, "lstm");
  }
  dense_ = nn::DenseStack(spec_.dense_input_width(), spec_.nodes, spec_.layers, lstm_.param_count(), "dense");
}

std::vector<nn::TensorInfo> Network::tensors() const {
  std::vector<nn::TensorInfo> out = lstm_.tensors();
  out.insert(out.end(), dense_.tensors().begin(), dense_.tensors().end());
  return out;
}

void Network::check_input(const Eigen::Ref<const Matrix>& x) const {
  if (x.cols() != spec_.input_width()) {
    throw ShapeError("input has " + std::to_string(x.cols()) + " columns, " + spec_.to_string() + " expects " +
                     std::to_string(spec_.input_width()));
  }
}

std::vector<Matrix> Network::sequence(const Eigen::Ref<const Matrix>& x) const {
  check_input(x);
  const Index steps = spec_.sequence_length();
  const Index N = spec_.pool_width;
  const Index M = spec_.cpi_width;
  std::vector<Matrix> seq(static_cast<std::size_t>(steps));
  for (Index lag = 0; lag < steps; ++lag) {
    Matrix& step = seq[static_cast<std::size_t>(steps - 1 - lag)];
    if (spec_.kind == ModelKind::LstmAll) {
      step.resize(x.rows(), N + M);
      step.leftCols(N) = x.middleCols(lag * N, N);
      step.rightCols(M) = x.middleCols(N * steps + lag * M, M);
    } else {
      step = x.middleCols(lag * N, N);
    }
  }
  return seq;
}

Matrix Network::dense_input(const Eigen::Ref<const Matrix>& x, const Matrix& memory) const {
  switch (spec_.kind) {
    case ModelKind::FfCpi:
    case ModelKind::FfPool: return x;
    case ModelKind::LstmPool:
    case ModelKind::LstmAll: return memory;
    case ModelKind::FfLstm: {
      const Index wide = spec_.cpi_width * spec_.lags_w;
      Matrix in(x.rows(), wide + spec_.state);
      in.leftCols(wide) = x.middleCols(spec_.pool_width * spec_.lags_z, wide);
      in.rightCols(spec_.state) = memory;
      return in;
    }
  }
  return x;
}

Vector Network::forward(nn::ParamSpan params, const Eigen::Ref<const Matrix>& x, Cache* cache) const {
  check_input(x);
  if (static_cast<Index>(params.size()) != param_count()) throw ShapeError("parameter vector does not match network");
  if (!has_lstm(spec_.kind)) {
    return dense_.forward(params, x, cache ? &cache->dense : nullptr);
  }
  Matrix memory = lstm_.forward(params, sequence(x), cache ? &cache->lstm : nullptr);
  const Matrix in = dense_input(x, memory);
  Vector out = dense_.forward(params, in, cache ? &cache->dense : nullptr);
  if (cache) cache->memory = std::move(memory);
  return out;
}

void Network::backward(nn::ParamSpan params, const Cache& cache, const Eigen::Ref<const Vector>& d_out,
                       nn::GradSpan grad) const {
  if (!has_lstm(spec_.kind)) {
    dense_.backward(params, cache.dense, d_out, grad);
    return;
  }
  Matrix d_input;
  dense_.backward(params, cache.dense, d_out, grad, &d_input);
  const Matrix d_memory = d_input.rightCols(spec_.state);
  lstm_.backward(params, cache.lstm, d_memory, grad);
}

void Network::initialize(nn::GradSpan params, nn::Rng& rng) const {
  if (static_cast<Index>(params.size()) != param_count()) throw ShapeError("parameter vector does not match network");
  if (has_lstm(spec_.kind)) lstm_.initialize(params, rng);
  dense_.initialize(params, rng);
}

Vector Network::predict(const Vector& params, const Eigen::Ref<const Matrix>& x) const {
  return forward(nn::as_span(params), x, nullptr);
}

Matrix Network::memory(const Vector& params, const Eigen::Ref<const Matrix>& x) const {
  if (!has_lstm(spec_.kind)) throw ValidationError(std::string(kind_name(spec_.kind)) + " has no internal memory");
  return lstm_.forward(nn::as_span(params), sequence(x), nullptr);
}

nn::Checkpoint make_checkpoint(const Network& net, const Vector& params) {
  if (params.size() != net.param_count()) throw ShapeError("parameter vector does not match network");
  return {net.spec().to_string(), net.tensors(), params};
}

std::pair<Network, Vector> load_checkpoint(const nn::Checkpoint& ckpt) {
  Network net(NetworkSpec::parse(ckpt.spec));
  const auto expected = net.tensors();
  if (expected.size() != ckpt.tensors.size()) throw ParseError("checkpoint tensor table does not match its spec");
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& a = expected[i];
    const auto& b = ckpt.tensors[i];
    if (a.name != b.name || a.rows != b.rows || a.cols != b.cols) {
      throw ParseError("checkpoint tensor '" + b.name + "' does not match the architecture (expected '" + a.name + "' " +
                       std::to_string(a.rows) + "x" + std::to_string(a.cols) + ")");
    }
  }
  return {std::move(net), ckpt.params};
}

}  // namespace inflnet::models
