#pragma once

#include <utility>
#include <vector>

#include "stablemix/config.hpp"
#include "stablemix/rng.hpp"

namespace stablemix {

/// Position of the Mittag-Leffler Markov chain: value of M_{alpha, theta + k}.
struct ChainState {
  double alpha = 0.5;
  double theta = 0.0;
  int k = 0;
  double value = 1.0;

  void validate() const;
};

/// q(u|t) = (alpha u / Gamma(1/alpha - 1)) (p_alpha(u) / p_alpha(t)) (u - t)^{1/alpha - 2}, u > t.
double transition_density(double alpha, double t, double u, const NumericConfig& cfg = {});

/// Forward kernel with a cached table of log(v p_alpha(v)) on a log-v grid
/// (cubic Hermite, 4th-order slopes).  Each draw tabulates the conditional CDF
/// in w = (u - t)^kappa / kappa, kappa = 1/alpha - 1, which absorbs the
/// (u - t)^{kappa - 1} factor.  alpha = 1/2 uses the closed-form quantile.
class TransitionKernel {
 public:
  explicit TransitionKernel(double alpha, const NumericConfig& cfg = {});

  double alpha() const { return alpha_; }
  /// Exact kernel value (same as transition_density).
  double density(double t, double u) const;
  /// Inverse conditional CDF at probability p.
  double quantile(double t, double p) const;
  double sample(double t, RngState& rng) const { return quantile(t, rng.uniform()); }

 private:
  double log_g(double y) const;  // log(v p_alpha(v)) at v = e^y

  double alpha_;
  NumericConfig cfg_;
  double y_lo_ = 0.0, h_ = 0.0, log_p0_ = 0.0;
  std::vector<double> l_, d_;
};

/// Both sides of the joint-density identity for (M_{alpha,theta+k}, M_{alpha,theta+k+1}):
///   lhs = p_{alpha,theta+k}(t) q(u|t),
///   rhs = p_{alpha,theta+k+1}(u) u^{-1} beta(t/u | (theta+k)/alpha + 1, 1/alpha - 1).
std::pair<double, double> joint_consistency(double alpha, double theta, int k, double t, double u,
                                            const NumericConfig& cfg = {});

/// Trajectory start.value, M_1, ..., M_{n_steps} (n_steps + 1 values); n_steps >= 1.
std::vector<double> simulate_chain(const ChainState& start, int n_steps, RngState& rng, const NumericConfig& cfg = {});

/// Same with a caller-owned kernel, for many trajectories.
std::vector<double> simulate_chain(const TransitionKernel& kernel, double start, int n_steps, RngState& rng);

}  // namespace stablemix
