#pragma once

#include <span>
#include <string>
#include <vector>

#include "inflnet/common.hpp"

namespace inflnet::nn {

// Location of one weight matrix or bias vector inside a flat parameter
// vector. Values are stored row-major.
struct TensorInfo {
  std::string name;
  Index rows = 0;
  Index cols = 0;
  Index offset = 0;

  Index size() const { return rows * cols; }
};

using ParamSpan = std::span<const double>;
using GradSpan = std::span<double>;

inline Eigen::Map<const RowMatrix> view(ParamSpan p, const TensorInfo& t) {
  return Eigen::Map<const RowMatrix>(p.data() + t.offset, t.rows, t.cols);
}

inline Eigen::Map<RowMatrix> view(GradSpan g, const TensorInfo& t) {
  return Eigen::Map<RowMatrix>(g.data() + t.offset, t.rows, t.cols);
}

inline ParamSpan as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline GradSpan as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace inflnet::nn
