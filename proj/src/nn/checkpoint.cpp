#include "inflnet/nn/checkpoint.hpp"

#include <sstream>

#include "inflnet/io.hpp"

namespace inflnet::nn {

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  Index total = 0;
  for (const auto& t : ckpt.tensors) total += t.size();
  if (total != ckpt.params.size()) throw ShapeError("checkpoint tensors do not cover the parameter vector");
  std::ostringstream out;
  out << "inflnet-checkpoint 1\n";
  out << "spec " << ckpt.spec << "\n";
  out << "tensors " << ckpt.tensors.size() << "\n";
  for (const auto& t : ckpt.tensors) out << t.name << " " << t.rows << " " << t.cols << "\n";
  out << "values " << ckpt.params.size() << "\n";
  for (Index i = 0; i < ckpt.params.size(); ++i) out << format_double(ckpt.params(i)) << "\n";
  return out.str();
}

Checkpoint parse_checkpoint(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto expect = [&](const std::string& keyword) {
    if (!std::getline(in, line) || line.rfind(keyword, 0) != 0) {
      throw ParseError("checkpoint: expected '" + keyword + "'");
    }
    return line.size() > keyword.size() ? line.substr(keyword.size() + 1) : std::string();
  };
  expect("inflnet-checkpoint 1");
  Checkpoint ckpt;
  ckpt.spec = expect("spec");
  const long count = std::stol(expect("tensors"));
  Index offset = 0;
  for (long i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw ParseError("checkpoint: truncated tensor table");
    std::istringstream ls(line);
    TensorInfo t;
    if (!(ls >> t.name >> t.rows >> t.cols)) throw ParseError("checkpoint: bad tensor line '" + line + "'");
    t.offset = offset;
    offset += t.size();
    ckpt.tensors.push_back(t);
  }
  const long total = std::stol(expect("values"));
  if (total != offset) throw ParseError("checkpoint: value count does not match tensor shapes");
  ckpt.params.resize(total);
  for (long i = 0; i < total; ++i) {
    if (!std::getline(in, line)) throw ParseError("checkpoint: truncated values");
    ckpt.params(i) = std::stod(line);
  }
  return ckpt;
}

void write_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  write_text_atomic(path, serialize_checkpoint(ckpt));
}

Checkpoint read_checkpoint(const std::string& path) { return parse_checkpoint(read_text(path)); }

void write_loss_history(const std::string& path, const std::vector<double>& history) {
  std::ostringstream out;
  out << "epoch,loss\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << (i + 1) << "," << format_double(history[i]) << "\n";
  write_text_atomic(path, out.str());
}

}  // namespace inflnet::nn
