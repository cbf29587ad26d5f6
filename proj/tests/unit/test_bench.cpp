#include <doctest.h>

#include <cmath>
#include <random>

#include "inflnet/bench/ar1.hpp"
#include "inflnet/bench/fadl.hpp"
#include "inflnet/bench/ucsv.hpp"
#include "oracles.hpp"

using namespace inflnet;
using namespace inflnet::bench;

namespace {

Vector simulate_ucsv(Index T, double w_tau, double w_h, std::mt19937_64& rng, Vector* tau_out = nullptr) {
  std::normal_distribution<double> n01;
  Vector pi(T), tau(T);
  double t = std::sqrt(0.12) * n01(rng);
  double h = std::sqrt(0.12) * n01(rng);
  for (Index i = 0; i < T; ++i) {
    if (i > 0) {
      t += std::sqrt(w_tau) * n01(rng);
      h += std::sqrt(w_h) * n01(rng);
    }
    tau(i) = t;
    pi(i) = t + std::exp(h / 2) * n01(rng);
  }
  if (tau_out) *tau_out = tau;
  return pi;
}

}  // namespace

TEST_CASE("AR(1) hand examples") {
  Ar1Fit f;
  f.intercept = 0.7;
  f.slope = 0.0;
  CHECK(ar1_forecast(f, 5.0, 3) == doctest::Approx(0.7));
  f.intercept = 0.0;
  f.slope = 0.5;
  CHECK(ar1_forecast(f, 1.0, 2) == doctest::Approx(0.25));
  f.intercept = 0.1;
  f.slope = 1.0;
  CHECK(ar1_forecast(f, 2.0, 4) == doctest::Approx(2.4));
}

TEST_CASE("AR(1) closed form equals the recursion") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-1, 1), phi(-0.99, 0.99), last(-5, 5);
  std::uniform_int_distribution<Index> h(1, 24);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Ar1Fit f;
    f.intercept = c(rng);
    f.slope = phi(rng);
    const double x = last(rng);
    const Index hh = h(rng);
    worst = std::max(worst, std::abs(ar1_forecast(f, x, hh) - ar1_iterate(f, x, hh)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("AR(1) least squares recovers the generating process") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  Vector y(4000);
  y(0) = 0.0;
  for (Index t = 1; t < y.size(); ++t) y(t) = 0.2 + 0.6 * y(t - 1) + 0.1 * n01(rng);
  const auto fit = fit_ar1(y);
  CHECK(fit.observations == 3999);
  CHECK(fit.slope == doctest::Approx(0.6).epsilon(0.03));
  CHECK(fit.intercept == doctest::Approx(0.2).epsilon(0.05));
  CHECK(fit.residual_variance == doctest::Approx(0.01).epsilon(0.05));
  CHECK_THROWS_AS(fit_ar1(Vector::Ones(2)), ValidationError);
}

TEST_CASE("tridiagonal solve and sampler agree with a dense solve") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  const Index T = 12;
  Vector diag(T), off(T - 1), b(T);
  for (Index i = 0; i < T; ++i) diag(i) = 3.0 + std::abs(n01(rng));
  for (Index i = 0; i < T - 1; ++i) off(i) = -1.0;
  for (Index i = 0; i < T; ++i) b(i) = n01(rng);
  Matrix P = Matrix::Zero(T, T);
  P.diagonal() = diag;
  P.diagonal(1) = off;
  P.diagonal(-1) = off;
  const Vector dense = P.ldlt().solve(b);
  CHECK((solve_tridiagonal(diag, off, b) - dense).cwiseAbs().maxCoeff() <= 1e-12);

  Vector mean = Vector::Zero(T);
  const int draws = 20000;
  for (int d = 0; d < draws; ++d) mean += sample_tridiagonal(diag, off, b, rng);
  mean /= draws;
  CHECK((mean - dense).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("UC-SV on a constant series centres on the constant") {
  Vector y = Vector::Constant(60, 0.3);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (Index i = 0; i < y.size(); ++i) y(i) += 1e-3 * n01(rng);
  UcsvConfig cfg;
  cfg.draws = 2000;
  cfg.burn_in = 500;
  cfg.scale = 1.0;
  const auto r = ucsv_fit(y, cfg);
  CHECK(std::abs(r.forecast - 0.3) <= 2 * r.tau_last_sd + 1e-3);
  for (double w : r.omega2_tau_draws) CHECK(w > 0);
  for (double w : r.omega2_h_draws) CHECK(w > 0);
}

TEST_CASE("UC-SV forecast is a deterministic function of the seed") {
  std::mt19937_64 rng(2);
  const Vector y = simulate_ucsv(80, 0.02, 0.03, rng);
  UcsvConfig cfg;
  cfg.draws = 500;
  cfg.burn_in = 100;
  cfg.scale = 1.0;
  cfg.seed = 11;
  const auto a = ucsv_fit(y, cfg);
  const auto b = ucsv_fit(y, cfg);
  CHECK(a.forecast == b.forecast);
  CHECK(a.tau_mean.size() == 80);
}

TEST_CASE("UC-SV Monte Carlo error shrinks with more draws") {
  std::mt19937_64 rng(4);
  const Vector y = simulate_ucsv(120, 0.02, 0.03, rng);
  UcsvConfig cfg;
  cfg.scale = 1.0;
  cfg.burn_in = 500;
  cfg.draws = 1000;
  const double small = ucsv_fit(y, cfg).tau_last_mcse;
  cfg.draws = 16000;
  const double large = ucsv_fit(y, cfg).tau_last_mcse;
  CHECK(large < small);
}

TEST_CASE("UC-SV credible intervals cover the simulated trend") {
  std::mt19937_64 rng(21);
  int covered = 0;
  const int reps = 10;
  for (int r = 0; r < reps; ++r) {
    Vector tau;
    const Vector y = simulate_ucsv(250, 0.02, 0.03, rng, &tau);
    UcsvConfig cfg;
    cfg.scale = 1.0;
    cfg.draws = 3000;
    cfg.burn_in = 1000;
    cfg.seed = static_cast<std::uint64_t>(r);
    const auto fit = ucsv_fit(y, cfg);
    auto d = fit.tau_last_draws;
    std::sort(d.begin(), d.end());
    const double lo = d[static_cast<std::size_t>(0.025 * d.size())];
    const double hi = d[static_cast<std::size_t>(0.975 * d.size())];
    if (tau(tau.size() - 1) >= lo && tau(tau.size() - 1) <= hi) ++covered;
  }
  CHECK(covered >= 8);
}

TEST_CASE("UC-SV input validation") {
  CHECK_THROWS_AS(ucsv_fit(Vector::Zero(10)), ValidationError);
  Vector y = Vector::Zero(40);
  y(3) = std::nan("");
  CHECK_THROWS_AS(ucsv_fit(y), DomainError);
  UcsvConfig cfg;
  cfg.v_tau = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("principal components match the eigen decomposition") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n01;
  Matrix raw(10, 5);
  for (Index i = 0; i < raw.size(); ++i) raw.data()[i] = n01(rng);
  const Matrix x = standardize(raw).values;
  for (Index j = 0; j < x.cols(); ++j) {
    CHECK(x.col(j).mean() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x.col(j).squaredNorm() / 10.0 == doctest::Approx(1.0));
  }
  const auto pc = principal_components(x, 3);
  const Matrix ref = oracle::pca_scores_eigen(x, 3);
  for (Index j = 0; j < 3; ++j) {
    const double sign = pc.scores.col(j).dot(ref.col(j)) >= 0 ? 1.0 : -1.0;
    CHECK((pc.scores.col(j) - sign * ref.col(j)).cwiseAbs().maxCoeff() <= 1e-10);
  }
  CHECK((pc.scores.transpose() * pc.scores / 10.0 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);

  const auto full = principal_components(x, 5);
  const Vector root = full.eigenvalues.head(5).cwiseSqrt();
  const Matrix rebuilt = full.scores * root.asDiagonal() * full.loadings.transpose();
  CHECK((rebuilt - x).cwiseAbs().maxCoeff() <= 1e-12);

  Matrix constant = raw;
  constant.col(2).setConstant(1.0);
  CHECK_THROWS_AS(standardize(constant), DomainError);
}

TEST_CASE("FADL with an exact linear process returns the OLS forecast") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  const Index T = 80, h = 3;
  Matrix f(T, 2);
  for (Index i = 0; i < f.size(); ++i) f.data()[i] = n01(rng);
  Vector pi(T);
  for (Index t = 0; t < h + 1; ++t) pi(t) = n01(rng);
  for (Index t = h + 1; t < T; ++t) {
    const Index s = t - h;
    pi(t) = 0.4 + 0.3 * pi(s) - 0.2 * pi(s - 1) + 0.5 * f(s, 0) - 0.7 * f(s, 1);
  }
  FadlConfig cfg;
  cfg.lags = 2;
  cfg.factors = 2;
  cfg.bootstrap = 200;
  const auto fit = fadl_from_factors(pi, f, h, cfg);
  CHECK(fit.residuals.cwiseAbs().maxCoeff() <= 1e-10);
  const double exact = 0.4 + 0.3 * pi(T - 1) - 0.2 * pi(T - 2) + 0.5 * f(T - 1, 0) - 0.7 * f(T - 1, 1);
  CHECK(fit.ols_forecast == doctest::Approx(exact).epsilon(1e-10));
  CHECK(fit.forecast == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("FADL without factors equals direct OLS on lags") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n01;
  const Index T = 60, h = 2, p = 3;
  Vector pi(T);
  for (Index t = 0; t < T; ++t) pi(t) = n01(rng);
  FadlConfig cfg;
  cfg.lags = p;
  cfg.factors = 0;
  cfg.bootstrap = 4000;
  const auto fit = fadl_fit_forecast(pi, Matrix::Zero(T, 3), h, cfg);
  const Index n = T - h - p + 1;
  Matrix X(n, p + 1);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    const Index t = p - 1 + i;
    X(i, 0) = 1.0;
    for (Index l = 0; l < p; ++l) X(i, 1 + l) = pi(t - l);
    y(i) = pi(t + h);
  }
  const Vector b = oracle::ols(X, y);
  CHECK((fit.coefficients - b).cwiseAbs().maxCoeff() <= 1e-10);
  Vector last(p + 1);
  last << 1.0, pi(T - 1), pi(T - 2), pi(T - 3);
  CHECK(fit.ols_forecast == doctest::Approx(last.dot(b)).epsilon(1e-10));
  const double sd = std::sqrt(fit.residuals.squaredNorm() / n);
  CHECK(std::abs(fit.forecast - fit.ols_forecast) < 4 * sd / std::sqrt(4000.0) * 1.5);
}

TEST_CASE("FADL rejects degenerate designs") {
  const Index T = 40;
  Vector pi = Vector::LinSpaced(T, 0, 1);
  Matrix f(T, 1);
  f.col(0) = pi;
  FadlConfig cfg;
  cfg.lags = 1;
  cfg.factors = 1;
  cfg.bootstrap = 10;
  CHECK_THROWS_AS(fadl_from_factors(pi, f, 1, cfg), DomainError);
  CHECK_THROWS_AS(fadl_from_factors(pi.head(4), f.topRows(4), 1, cfg), ValidationError);
  CHECK_THROWS_AS(fadl_from_factors(pi, f.topRows(10), 1, cfg), ShapeError);
}
