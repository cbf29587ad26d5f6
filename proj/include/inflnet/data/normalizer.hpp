#pragma once

#include <string>
#include <vector>

#include "inflnet/common.hpp"

namespace inflnet::data {

// Per-column affine map sending the in-sample min to -1 and max to +1.
// Rows after the fitted range are mapped with the same coefficients and are
// not clipped.
class Normalizer {
 public:
  Normalizer() = default;

  // Fits on rows [0, in_sample_end). `names` only feeds error messages.
  static Normalizer fit(const Matrix& values, Index in_sample_end, const std::vector<std::string>& names = {});

  Matrix apply(const Matrix& values) const;
  Matrix invert(const Matrix& scaled) const;
  double apply(double value, Index column) const;
  double invert(double scaled, Index column) const;

  const Vector& min() const { return min_; }
  const Vector& max() const { return max_; }
  Index fitted_rows() const { return fitted_rows_; }
  Index cols() const { return min_.size(); }

 private:
  Vector min_;
  Vector max_;
  Index fitted_rows_ = 0;
};

}  // namespace inflnet::data
