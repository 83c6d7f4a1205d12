#include "stablemix/chain.hpp"

#include <cmath>
#include <limits>

#include "stablemix/errors.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/special.hpp"
#include "stablemix/table.hpp"

namespace stablemix {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chain: alpha must be in (0, 1)");
}

double log_beta_pdf(double x, double a, double b) {
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + log_gamma(a + b) - log_gamma(a) - log_gamma(b);
}

}  // namespace

void ChainState::validate() const {
  check_alpha(alpha);
  if (!(theta > -alpha)) throw ConstraintError("ChainState: theta must be > -alpha");
  if (k < 0) throw ConstraintError("ChainState: k must be >= 0");
  if (!(value > 0.0) || !std::isfinite(value)) throw ConstraintError("ChainState: value must be > 0");
}

double transition_density(double alpha, double t, double u, const NumericConfig& cfg) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("transition_density: t must be > 0");
  if (u <= t) return 0.0;
  const double log_q = std::log(alpha * u) - log_gamma(1.0 / alpha - 1.0) + ml_log_density(alpha, u, cfg) -
                       ml_log_density(alpha, t, cfg) + (1.0 / alpha - 2.0) * std::log(u - t);
  return std::exp(log_q);
}

TransitionKernel::TransitionKernel(double alpha, const NumericConfig& cfg) : alpha_(alpha), cfg_(cfg) {
  check_alpha(alpha);
  cfg_.validate();
  if (alpha == 0.5) return;
  // Below y_lo, p_alpha(v) = 1/Gamma(1-alpha) + O(v).
  y_lo_ = -20.0;
  h_ = 0.01;
  log_p0_ = -log_gamma(1.0 - alpha);
  for (double y = y_lo_;; y += h_) {
    const double l = y + ml_log_density(alpha, std::exp(y), cfg_);
    l_.push_back(l);
    if (l < -760.0 || l_.size() > 200000) break;
  }
  const std::size_t n = l_.size();
  if (n < 5) throw TabulationError("TransitionKernel: table too short");
  d_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n)
      d_[i] = (-l_[i + 2] + 8.0 * l_[i + 1] - 8.0 * l_[i - 1] + l_[i - 2]) / (12.0 * h_);
    else if (i < 2)
      d_[i] = (-3.0 * l_[i] + 4.0 * l_[i + 1] - l_[i + 2]) / (2.0 * h_);
    else
      d_[i] = (3.0 * l_[i] - 4.0 * l_[i - 1] + l_[i - 2]) / (2.0 * h_);
  }
}

double TransitionKernel::log_g(double y) const {
  if (y < y_lo_) return y + log_p0_;
  const double pos = (y - y_lo_) / h_;
  const auto j = static_cast<std::size_t>(pos);
  if (j + 1 >= l_.size()) return kNegInf;
  const double s = pos - j, s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * l_[j] + (s3 - 2 * s2 + s) * h_ * d_[j] + (-2 * s3 + 3 * s2) * l_[j + 1] +
         (s3 - s2) * h_ * d_[j + 1];
}

double TransitionKernel::density(double t, double u) const { return transition_density(alpha_, t, u, cfg_); }

double TransitionKernel::quantile(double t, double p) const {
  if (!(t > 0.0)) throw DomainError("TransitionKernel: t must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("TransitionKernel: p must be in [0, 1)");
  if (alpha_ == 0.5) return std::sqrt(t * t - 4.0 * std::log1p(-p));
  const double kappa = 1.0 / alpha_ - 1.0;
  auto log_q = [&](double d) { return log_g(std::log(t + d)) + (kappa - 1.0) * std::log(d); };
  // Walk d = u - t outwards by doubling until past the peak and 40 e-folds down.
  double d = 1e-8 * std::max(t, 1.0);
  double best = log_q(d);
  for (int i = 0;; ++i) {
    if (i > 200) throw TabulationError("TransitionKernel: kernel does not decay");
    d *= 2.0;
    const double lq = log_q(d);
    best = std::max(best, lq);
    if (lq < best - 40.0) break;
  }
  const double w_max = std::pow(d, kappa) / kappa;
  const int n = 256;
  std::vector<double> ws(n + 1);
  for (int i = 0; i <= n; ++i) ws[i] = w_max * i / n;
  auto g_of_w = [&](double w) { return std::exp(log_g(std::log(t + std::pow(kappa * w, 1.0 / kappa)))); };
  const auto table = DensityTable::tabulate(g_of_w, std::move(ws));
  // int_t^inf u p(u) (u - t)^{kappa-1} du = Gamma(kappa) p(t) / alpha.
  const double expected = std::exp(log_gamma(kappa) + log_g(std::log(t)) - std::log(t * alpha_));
  if (std::abs(table.total() / expected - 1.0) > 1e-5)
    throw TabulationError("TransitionKernel: tabulated CDF does not reach 1 within tolerance");
  const double w = table.quantile(p);
  return t + std::pow(kappa * w, 1.0 / kappa);
}

std::pair<double, double> joint_consistency(double alpha, double theta, int k, double t, double u,
                                            const NumericConfig& cfg) {
  check_alpha(alpha);
  if (k < 0) throw DomainError("joint_consistency: k must be >= 0");
  if (!(t > 0.0 && u > t)) throw DomainError("joint_consistency: need u > t > 0");
  const double th = theta + k;
  const double lhs = ml2_density(MLParams(alpha, th), t, cfg) * transition_density(alpha, t, u, cfg);
  const double rhs = ml2_density(MLParams(alpha, th + 1.0), u, cfg) / u *
                     std::exp(log_beta_pdf(t / u, th / alpha + 1.0, 1.0 / alpha - 1.0));
  return {lhs, rhs};
}

std::vector<double> simulate_chain(const TransitionKernel& kernel, double start, int n_steps, RngState& rng) {
  if (n_steps < 1) throw ArgumentError("simulate_chain: n_steps must be >= 1");
  if (!(start > 0.0)) throw DomainError("simulate_chain: start must be > 0");
  std::vector<double> path{start};
  path.reserve(n_steps + 1);
  for (int i = 0; i < n_steps; ++i) path.push_back(kernel.sample(path.back(), rng));
  return path;
}

std::vector<double> simulate_chain(const ChainState& start, int n_steps, RngState& rng, const NumericConfig& cfg) {
  start.validate();
  const TransitionKernel kernel(start.alpha, cfg);
  return simulate_chain(kernel, start.value, n_steps, rng);
}

}  // namespace stablemix
