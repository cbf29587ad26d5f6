#include "inflnet/bench/fadl.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "inflnet/nn/init.hpp"

namespace inflnet::bench {

Standardized standardize(const Eigen::Ref<const Matrix>& x) {
  if (x.rows() < 2) throw ValidationError("standardization needs at least two rows");
  Standardized s;
  s.mean = x.colwise().mean().transpose();
  s.values = x.rowwise() - s.mean.transpose();
  s.sd = (s.values.colwise().squaredNorm() / static_cast<double>(x.rows())).cwiseSqrt().transpose();
  for (Index j = 0; j < x.cols(); ++j) {
    if (!(s.sd(j) > 0)) throw DomainError("column " + std::to_string(j) + " is constant and cannot be standardized");
  }
  s.values.array().rowwise() /= s.sd.transpose().array();
  return s;
}

Principal principal_components(const Eigen::Ref<const Matrix>& x, Index factors) {
  const Index T = x.rows();
  if (factors < 0 || factors > std::min(T, x.cols())) {
    throw ValidationError("factor count " + std::to_string(factors) + " exceeds the panel dimensions");
  }
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Principal p;
  const double sqrt_t = std::sqrt(static_cast<double>(T));
  p.scores = svd.matrixU().leftCols(factors) * sqrt_t;
  p.loadings = svd.matrixV().leftCols(factors);
  p.eigenvalues = svd.singularValues().array().square() / static_cast<double>(T);
  return p;
}

void FadlConfig::validate() const {
  if (lags < 1) throw ValidationError("FADL needs at least one inflation lag");
  if (factors < 0) throw ValidationError("FADL factor count must be non-negative");
  if (bootstrap < 1) throw ValidationError("FADL needs at least one bootstrap draw");
}

FadlFit fadl_from_factors(const Eigen::Ref<const Vector>& pi, const Eigen::Ref<const Matrix>& factors, Index horizon,
                          const FadlConfig& cfg) {
  cfg.validate();
  if (horizon < 1) throw ValidationError("forecast horizon must be at least 1");
  const Index T = pi.size();
  const Index r = factors.cols();
  if (factors.rows() != T) throw ShapeError("factors and inflation series are not aligned");
  const Index p = cfg.lags;
  const Index k = 1 + p + r;
  const Index first = p - 1;
  const Index last = T - 1 - horizon;
  const Index n = last - first + 1;
  if (n <= k) {
    throw ValidationError("FADL has " + std::to_string(n) + " observations for " + std::to_string(k) + " regressors");
  }

  auto regressors = [&](Index t) {
    Vector row(k);
    row(0) = 1.0;
    for (Index i = 0; i < p; ++i) row(1 + i) = pi(t - i);
    if (r > 0) row.tail(r) = factors.row(t).transpose();
    return row;
  };
  Matrix X(n, k);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    X.row(i) = regressors(first + i).transpose();
    y(i) = pi(first + i + horizon);
  }

  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  if (qr.rank() < k) {
    throw DomainError("FADL regression is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                      std::to_string(k) + ")");
  }
  FadlFit fit;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.last_regressors = regressors(T - 1);
  fit.ols_forecast = fit.last_regressors.dot(fit.coefficients);

  // Fixed-regressor bootstrap: y* = X b + e*, b* = (X'X)^{-1} X' y*, and the
  // forecast draw is x_T' b* + e** with e*, e** resampled residuals.
  const Matrix gram = X.transpose() * X;
  const Vector weights = X * gram.ldlt().solve(fit.last_regressors);
  std::mt19937_64 rng(cfg.seed);
  auto pick = [&]() {
    const auto idx = static_cast<Index>(nn::uniform01(rng) * static_cast<double>(n));
    return fit.residuals(std::min(idx, n - 1));
  };
  fit.bootstrap.resize(cfg.bootstrap);
  for (Index b = 0; b < cfg.bootstrap; ++b) {
    double shift = 0.0;
    for (Index i = 0; i < n; ++i) shift += weights(i) * pick();
    fit.bootstrap(b) = fit.ols_forecast + shift + pick();
  }
  fit.forecast = fit.bootstrap.mean();
  return fit;
}

FadlFit fadl_fit_forecast(const Eigen::Ref<const Vector>& pi, const Eigen::Ref<const Matrix>& panel, Index horizon,
                          const FadlConfig& cfg) {
  if (panel.rows() != pi.size()) throw ShapeError("panel and inflation series are not aligned");
  cfg.validate();
  if (cfg.factors == 0) return fadl_from_factors(pi, Matrix(pi.size(), 0), horizon, cfg);
  const auto z = standardize(panel);
  const auto pc = principal_components(z.values, cfg.factors);
  return fadl_from_factors(pi, pc.scores, horizon, cfg);
}

}  // namespace inflnet::bench
