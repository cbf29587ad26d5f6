#include "inflnet/data/normalizer.hpp"

#include <cmath>

namespace inflnet::data {

Normalizer Normalizer::fit(const Matrix& values, Index in_sample_end, const std::vector<std::string>& names) {
  if (in_sample_end < 1 || in_sample_end > values.rows()) {
    throw ValidationError("normalizer in-sample end " + std::to_string(in_sample_end) + " outside [1, " +
                          std::to_string(values.rows()) + "]");
  }
  Normalizer n;
  n.fitted_rows_ = in_sample_end;
  auto block = values.topRows(in_sample_end);
  n.min_ = block.colwise().minCoeff().transpose();
  n.max_ = block.colwise().maxCoeff().transpose();

  std::string constant;
  for (Index j = 0; j < values.cols(); ++j) {
    if (!(n.max_(j) > n.min_(j))) {
      if (!constant.empty()) constant += ", ";
      constant += j < static_cast<Index>(names.size()) ? names[static_cast<std::size_t>(j)] : std::to_string(j);
    }
  }
  if (!constant.empty()) throw ValidationError("constant in-sample column(s): " + constant);
  return n;
}

double Normalizer::apply(double value, Index column) const {
  return 2.0 * (value - min_(column)) / (max_(column) - min_(column)) - 1.0;
}

double Normalizer::invert(double scaled, Index column) const {
  return (scaled + 1.0) * 0.5 * (max_(column) - min_(column)) + min_(column);
}

Matrix Normalizer::apply(const Matrix& values) const {
  if (values.cols() != cols()) throw ShapeError("normalizer width mismatch");
  Matrix out(values.rows(), values.cols());
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) out(i, j) = apply(values(i, j), j);
  }
  return out;
}

Matrix Normalizer::invert(const Matrix& scaled) const {
  if (scaled.cols() != cols()) throw ShapeError("normalizer width mismatch");
  Matrix out(scaled.rows(), scaled.cols());
  for (Index j = 0; j < scaled.cols(); ++j) {
    for (Index i = 0; i < scaled.rows(); ++i) out(i, j) = invert(scaled(i, j), j);
  }
  return out;
}

}  // namespace inflnet::data
