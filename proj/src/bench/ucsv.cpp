#include "inflnet/bench/ucsv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "inflnet/nn/init.hpp"

namespace inflnet::bench {

// Kim, Shephard and Chib (1998) mixture for log chi-square(1), with the
// component means shifted by -1.2704.
const double LogChi2Mixture::prob[kComponents] = {0.0073, 0.10556, 0.00002, 0.04395, 0.34001, 0.24566, 0.2575};
const double LogChi2Mixture::mean[kComponents] = {-10.12999 - 1.2704, -3.97281 - 1.2704, -8.56686 - 1.2704,
                                                  2.77786 - 1.2704,   0.61942 - 1.2704,  1.79518 - 1.2704,
                                                  -1.08819 - 1.2704};
const double LogChi2Mixture::var[kComponents] = {5.79596, 2.61369, 5.17950, 0.16735, 0.64009, 0.34023, 1.26261};

void UcsvConfig::validate() const {
  if (draws < 1) throw ValidationError("UC-SV needs at least one kept draw");
  if (burn_in < 0) throw ValidationError("UC-SV burn-in must be non-negative");
  if (v_tau <= 0 || v_h <= 0) throw ValidationError("UC-SV initial state variances must be positive");
  if (prior_shape_tau <= 0 || prior_scale_tau <= 0 || prior_shape_h <= 0 || prior_scale_h <= 0) {
    throw ValidationError("UC-SV inverse-gamma hyperparameters must be positive");
  }
  if (log_offset <= 0) throw ValidationError("UC-SV log offset must be positive");
  if (scale <= 0) throw ValidationError("UC-SV scale must be positive");
  if (mcse_batches < 2) throw ValidationError("UC-SV needs at least two batches for the MCSE");
}

namespace {

struct Bidiagonal {
  Vector d;  // diagonal of L
  Vector l;  // sub-diagonal of L
};

Bidiagonal cholesky_tridiagonal(const Vector& diag, const Vector& off) {
  const Index n = diag.size();
  Bidiagonal c{Vector(n), Vector(std::max<Index>(n - 1, 0))};
  double prev = diag(0);
  if (!(prev > 0)) throw ConvergenceError("tridiagonal precision is not positive definite");
  c.d(0) = std::sqrt(prev);
  for (Index i = 1; i < n; ++i) {
    c.l(i - 1) = off(i - 1) / c.d(i - 1);
    const double v = diag(i) - c.l(i - 1) * c.l(i - 1);
    if (!(v > 0)) throw ConvergenceError("tridiagonal precision is not positive definite");
    c.d(i) = std::sqrt(v);
  }
  return c;
}

// L y = b
Vector forward_solve(const Bidiagonal& c, const Vector& b) {
  Vector y(b.size());
  y(0) = b(0) / c.d(0);
  for (Index i = 1; i < b.size(); ++i) y(i) = (b(i) - c.l(i - 1) * y(i - 1)) / c.d(i);
  return y;
}

// L' x = y
Vector backward_solve(const Bidiagonal& c, const Vector& y) {
  const Index n = y.size();
  Vector x(n);
  x(n - 1) = y(n - 1) / c.d(n - 1);
  for (Index i = n - 2; i >= 0; --i) x(i) = (y(i) - c.l(i) * x(i + 1)) / c.d(i);
  return x;
}

// Precision of a random walk x_1 ~ N(0, v0), x_t - x_{t-1} ~ N(0, w).
void random_walk_precision(Index n, double v0, double w, Vector& diag, Vector& off) {
  diag = Vector::Constant(n, 2.0 / w);
  diag(0) = 1.0 / v0 + 1.0 / w;
  diag(n - 1) = 1.0 / w;
  if (n == 1) diag(0) = 1.0 / v0;
  off = Vector::Constant(n - 1, -1.0 / w);
}

double draw_inverse_gamma(double shape, double scale, std::mt19937_64& rng) {
  std::gamma_distribution<double> g(shape, 1.0 / scale);
  return 1.0 / g(rng);
}

}  // namespace

Vector solve_tridiagonal(const Vector& diag, const Vector& off, const Vector& b) {
  const auto c = cholesky_tridiagonal(diag, off);
  return backward_solve(c, forward_solve(c, b));
}

Vector sample_tridiagonal(const Vector& diag, const Vector& off, const Vector& b, std::mt19937_64& rng) {
  const auto c = cholesky_tridiagonal(diag, off);
  std::normal_distribution<double> normal;
  Vector z(b.size());
  for (Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  return backward_solve(c, forward_solve(c, b) + z);
}

double batch_means_se(const std::vector<double>& draws, Index batches) {
  const Index n = static_cast<Index>(draws.size());
  if (batches < 2 || n < batches) throw ValidationError("batch means need at least one draw per batch");
  const Index size = n / batches;
  Vector means(batches);
  for (Index b = 0; b < batches; ++b) {
    double s = 0.0;
    for (Index i = b * size; i < (b + 1) * size; ++i) s += draws[static_cast<std::size_t>(i)];
    means(b) = s / static_cast<double>(size);
  }
  const double m = means.mean();
  const double var = (means.array() - m).square().sum() / static_cast<double>(batches - 1);
  return std::sqrt(var / static_cast<double>(batches));
}

UcsvResult ucsv_fit(const Eigen::Ref<const Vector>& series, const UcsvConfig& cfg) {
  cfg.validate();
  const Index T = series.size();
  if (T < 30) throw ValidationError("UC-SV needs at least 30 observations, got " + std::to_string(T));
  if (!series.allFinite()) throw DomainError("UC-SV series contains non-finite values");

  const Vector y = series * cfg.scale;
  std::mt19937_64 rng(cfg.seed);
  using Mix = LogChi2Mixture;

  Vector tau = y;
  const double var0 = std::max((y.array() - y.mean()).square().mean(), 1e-8);
  Vector h = Vector::Constant(T, std::log(var0));
  double w_tau = cfg.prior_scale_tau / std::max(cfg.prior_shape_tau - 1.0, 1.0);
  double w_h = cfg.prior_scale_h / std::max(cfg.prior_shape_h - 1.0, 1.0);

  UcsvResult out;
  out.tau_mean = Vector::Zero(T);
  out.h_mean = Vector::Zero(T);
  out.tau_last_draws.reserve(static_cast<std::size_t>(cfg.draws));
  out.omega2_tau_draws.reserve(static_cast<std::size_t>(cfg.draws));
  out.omega2_h_draws.reserve(static_cast<std::size_t>(cfg.draws));

  Vector diag, off, ystar(T), resid_mean(T), inv_var(T);
  std::array<double, Mix::kComponents> logw{};
  const Index total = cfg.burn_in + cfg.draws;
  for (Index it = 0; it < total; ++it) {
    // trend path given volatilities
    random_walk_precision(T, cfg.v_tau, w_tau, diag, off);
    const Vector inv_sig = (-h).array().exp();
    diag += inv_sig;
    tau = sample_tridiagonal(diag, off, Vector(inv_sig.cwiseProduct(y)), rng);

    // mixture indicators, then log-volatility path
    for (Index t = 0; t < T; ++t) {
      const double e = y(t) - tau(t);
      ystar(t) = std::log(e * e + cfg.log_offset);
      double top = -1e300;
      for (int j = 0; j < Mix::kComponents; ++j) {
        const double r = ystar(t) - h(t) - Mix::mean[j];
        logw[j] = std::log(Mix::prob[j]) - 0.5 * std::log(Mix::var[j]) - 0.5 * r * r / Mix::var[j];
        top = std::max(top, logw[j]);
      }
      double sum = 0.0;
      for (auto& w : logw) sum += (w = std::exp(w - top));
      double u = nn::uniform01(rng) * sum;
      int s = 0;
      while (s < Mix::kComponents - 1 && u >= logw[s]) u -= logw[s++];
      inv_var(t) = 1.0 / Mix::var[s];
      resid_mean(t) = (ystar(t) - Mix::mean[s]) * inv_var(t);
    }
    random_walk_precision(T, cfg.v_h, w_h, diag, off);
    diag += inv_var;
    h = sample_tridiagonal(diag, off, resid_mean, rng);

    // state variances
    const double ss_tau = (tau.tail(T - 1) - tau.head(T - 1)).squaredNorm();
    const double ss_h = (h.tail(T - 1) - h.head(T - 1)).squaredNorm();
    const double half = 0.5 * static_cast<double>(T - 1);
    w_tau = draw_inverse_gamma(cfg.prior_shape_tau + half, cfg.prior_scale_tau + 0.5 * ss_tau, rng);
    w_h = draw_inverse_gamma(cfg.prior_shape_h + half, cfg.prior_scale_h + 0.5 * ss_h, rng);

    if (!tau.allFinite() || !h.allFinite() || !std::isfinite(w_tau) || !std::isfinite(w_h) || w_tau <= 0 ||
        w_h <= 0) {
      std::ostringstream msg;
      msg << "UC-SV chain diverged at iteration " << it + 1 << ": omega2_tau=" << w_tau << " omega2_h=" << w_h
          << " tau_T=" << tau(T - 1) << " h_T=" << h(T - 1);
      throw ConvergenceError(msg.str());
    }

    if (it >= cfg.burn_in) {
      out.tau_mean += tau;
      out.h_mean += h;
      out.tau_last_draws.push_back(tau(T - 1));
      out.omega2_tau_draws.push_back(w_tau);
      out.omega2_h_draws.push_back(w_h);
    }
  }
  const double kept = static_cast<double>(cfg.draws);
  out.tau_mean /= kept;
  out.h_mean /= kept;
  out.tau_last_mean = out.tau_mean(T - 1);
  double ss = 0.0;
  for (double v : out.tau_last_draws) ss += (v - out.tau_last_mean) * (v - out.tau_last_mean);
  out.tau_last_sd = cfg.draws > 1 ? std::sqrt(ss / (kept - 1.0)) : 0.0;
  const Index batches = std::min(cfg.mcse_batches, cfg.draws);
  out.tau_last_mcse = batches >= 2 ? batch_means_se(out.tau_last_draws, batches) : 0.0;
  out.forecast = out.tau_last_mean / cfg.scale;
  return out;
}

}  // namespace inflnet::bench
