#pragma once

#include <string>
#include <vector>

#include "inflnet/nn/tensor.hpp"

namespace inflnet::nn {

// Text checkpoint:
//   inflnet-checkpoint 1
//   spec <one line describing the architecture>
//   tensors <count>
//   <name> <rows> <cols>          (one line per tensor, in storage order)
//   values <total>
//   <value>                       (one per line, row-major per tensor)
struct Checkpoint {
  std::string spec;
  std::vector<TensorInfo> tensors;
  Vector params;
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint parse_checkpoint(const std::string& text);
void write_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::string& path);

void write_loss_history(const std::string& path, const std::vector<double>& history);

}  // namespace inflnet::nn
