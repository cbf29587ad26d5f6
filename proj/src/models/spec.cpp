#include "inflnet/models/spec.hpp"

#include <sstream>

#include "inflnet/kv_config.hpp"

namespace inflnet::models {

std::string_view kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::FfCpi: return "ff_cpi";
    case ModelKind::FfPool: return "ff_pool";
    case ModelKind::LstmPool: return "lstm_pool";
    case ModelKind::LstmAll: return "lstm_all";
    case ModelKind::FfLstm: return "ff_lstm";
  }
  return "?";
}

ModelKind parse_kind(std::string_view name) {
  for (auto k : {ModelKind::FfCpi, ModelKind::FfPool, ModelKind::LstmPool, ModelKind::LstmAll, ModelKind::FfLstm}) {
    if (kind_name(k) == name) return k;
  }
  throw ValidationError("unknown model kind '" + std::string(name) + "'");
}

bool has_lstm(ModelKind kind) {
  return kind == ModelKind::LstmPool || kind == ModelKind::LstmAll || kind == ModelKind::FfLstm;
}

void NetworkSpec::validate() const {
  auto fail = [this](const std::string& why) { throw ValidationError("invalid " + to_string() + ": " + why); };
  if (nodes < 1) fail("nodes must be positive");
  if (layers < 1) fail("layers must be positive");
  const bool lstm = has_lstm(kind);
  if (lstm && state < 1) fail("LSTM kinds need a positive state size");
  if (!lstm && state != 0) fail("state size only applies to LSTM kinds");
  if (kind == ModelKind::FfLstm) {
    if (lags_w < 1 || lags_z < 1) fail("ff_lstm needs lags_w and lags_z");
  } else {
    if (lags < 1) fail("lags must be positive");
    if (lags_w != 0 || lags_z != 0) fail("lags_w/lags_z only apply to ff_lstm");
  }
  const bool needs_pool = kind != ModelKind::FfCpi;
  const bool needs_cpi = kind == ModelKind::FfCpi || kind == ModelKind::LstmAll || kind == ModelKind::FfLstm;
  if (needs_pool && pool_width < 1) fail("pool width N must be positive");
  if (needs_cpi && cpi_width < 1) fail("CPI block width M must be positive");
}

data::PredictorSpec NetworkSpec::predictors() const {
  using data::PredictorChoice;
  switch (kind) {
    case ModelKind::FfCpi: return {PredictorChoice::CpiOnly, lags, 0};
    case ModelKind::FfPool:
    case ModelKind::LstmPool: return {PredictorChoice::Pool, lags, 0};
    case ModelKind::LstmAll: return {PredictorChoice::All, lags, 0};
    case ModelKind::FfLstm: return {PredictorChoice::Composite, lags_z, lags_w};
  }
  return {};
}

Index NetworkSpec::input_width() const {
  switch (kind) {
    case ModelKind::FfCpi: return cpi_width * lags;
    case ModelKind::FfPool:
    case ModelKind::LstmPool: return pool_width * lags;
    case ModelKind::LstmAll: return (pool_width + cpi_width) * lags;
    case ModelKind::FfLstm: return pool_width * lags_z + cpi_width * lags_w;
  }
  return 0;
}

Index NetworkSpec::dense_input_width() const {
  switch (kind) {
    case ModelKind::FfCpi:
    case ModelKind::FfPool: return input_width();
    case ModelKind::LstmPool:
    case ModelKind::LstmAll: return state;
    case ModelKind::FfLstm: return cpi_width * lags_w + state;
  }
  return 0;
}

Index NetworkSpec::lstm_input_width() const {
  switch (kind) {
    case ModelKind::LstmPool:
    case ModelKind::FfLstm: return pool_width;
    case ModelKind::LstmAll: return pool_width + cpi_width;
    default: return 0;
  }
}

Index NetworkSpec::sequence_length() const {
  switch (kind) {
    case ModelKind::LstmPool:
    case ModelKind::LstmAll: return lags;
    case ModelKind::FfLstm: return lags_z;
    default: return 0;
  }
}

std::string NetworkSpec::to_string() const {
  std::ostringstream out;
  out << "kind=" << kind_name(kind);
  if (kind == ModelKind::FfLstm) {
    out << " lags_w=" << lags_w << " lags_z=" << lags_z;
  } else {
    out << " lags=" << lags;
  }
  out << " nodes=" << nodes << " layers=" << layers;
  if (has_lstm(kind)) out << " state=" << state;
  out << " N=" << pool_width << " M=" << cpi_width;
  return out.str();
}

NetworkSpec NetworkSpec::parse(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(normalized);
  NetworkSpec spec;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("network spec token '" + token + "' is not key=value");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "kind") {
      spec.kind = parse_kind(value);
      continue;
    }
    Index v = 0;
    try {
      v = std::stol(value);
    } catch (const std::exception&) {
      throw ParseError("network spec value for '" + key + "' is not an integer");
    }
    if (key == "lags" || key == "L") spec.lags = v;
    else if (key == "lags_w" || key == "L_w") spec.lags_w = v;
    else if (key == "lags_z" || key == "L_z") spec.lags_z = v;
    else if (key == "nodes" || key == "n") spec.nodes = v;
    else if (key == "layers" || key == "Q") spec.layers = v;
    else if (key == "state" || key == "p") spec.state = v;
    else if (key == "N") spec.pool_width = v;
    else if (key == "M") spec.cpi_width = v;
    else throw ParseError("unknown network spec key '" + key + "'");
  }
  if (spec.kind == ModelKind::FfLstm) spec.lags = 0;
  return spec;
}

Index param_count(const NetworkSpec& spec) {
  spec.validate();
  const Index n = spec.nodes;
  const Index Q = spec.layers;
  const Index N = spec.pool_width;
  const Index M = spec.cpi_width;
  const Index p = spec.state;
  const Index deep = (Q - 1) * (n + 1) * n + (n + 1);
  switch (spec.kind) {
    case ModelKind::FfCpi: return (M * spec.lags + 1) * n + deep;
    case ModelKind::FfPool: return (N * spec.lags + 1) * n + deep;
    case ModelKind::LstmPool: return 4 * (N * p + p * p + p) + (p + 1) * n + deep;
    case ModelKind::LstmAll: return 4 * ((N + M) * p + p * p + p) + (p + 1) * n + deep;
    case ModelKind::FfLstm: return 4 * (N * p + p * p + p) + (p + M * spec.lags_w + 1) * n + deep;
  }
  return 0;
}

}  // namespace inflnet::models
