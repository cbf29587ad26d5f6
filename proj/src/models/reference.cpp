#include "inflnet/models/reference.hpp"

namespace inflnet::models {

ReferenceConfig reference_config(ModelKind kind) {
  ReferenceConfig c;
  c.spec.kind = kind;
  c.spec.nodes = 128;
  c.train.epochs = 400;
  c.train.batch_size = 128;
  switch (kind) {
    case ModelKind::FfCpi:
      c.spec.lags = 24;
      c.spec.layers = 4;
      c.train.epochs = 200;
      break;
    case ModelKind::FfPool:
      c.spec.lags = 48;
      c.spec.layers = 3;
      break;
    case ModelKind::LstmPool:
    case ModelKind::LstmAll:
      c.spec.lags = 48;
      c.spec.layers = 4;
      c.spec.state = 2;
      c.train.batch_size = nn::kFullBatch;
      break;
    case ModelKind::FfLstm:
      c.spec.lags = 0;
      c.spec.lags_w = 24;
      c.spec.lags_z = 48;
      c.spec.layers = 4;
      c.spec.state = 2;
      break;
  }
  return c;
}

}  // namespace inflnet::models
