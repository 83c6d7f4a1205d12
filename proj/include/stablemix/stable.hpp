#pragma once

#include "stablemix/config.hpp"
#include "stablemix/rng.hpp"

namespace stablemix {

/// Index alpha and scale z of the one-sided stable law with Laplace
/// transform exp(-z x^alpha).  alpha == 1 is the point mass at z; it is
/// accepted here but rejected by the density evaluators.
class StableParams {
 public:
  explicit StableParams(double alpha, double z = 1.0);

  double alpha() const { return alpha_; }
  double z() const { return z_; }
  bool degenerate() const { return alpha_ == 1.0; }

 private:
  double alpha_, z_;
};

/// f_alpha(t|z) from the Bromwich integral collapsed onto two rays
/// s = r e^{+-i psi}.  For alpha <= 1/2 psi = pi, which is Pollard's real
/// integral  (1/pi) int e^{-tv} e^{-z v^a cos(pi a)} sin(z v^a sin(pi a)) dv.
/// For alpha > 1/2 that integrand grows before it decays, so the rays are
/// turned towards the imaginary axis until both exponentials damp.
double stable_density_integral(const StableParams& p, double t, const NumericConfig& cfg = {});

/// f_alpha(t|z) from the Pollard power series in t^{-alpha}.  Throws
/// NonConvergenceError unless both truncation and rounding stay below
/// cfg.rel_tol relative to the value within cfg.series_max_terms (this
/// fails for small t, where the terms first grow and then cancel).
double stable_density_series(const StableParams& p, double t, const NumericConfig& cfg = {});

/// f_alpha(t|z) from the Zolotarev-Kanter representation, a positive
/// integrand over (0, 1); accurate in relative terms far into the left tail.
double stable_density_zolotarev(const StableParams& p, double t, const NumericConfig& cfg = {});

/// Dispatcher: the series where it is accepted, otherwise Zolotarev.
double stable_density(const StableParams& p, double t, const NumericConfig& cfg = {});

/// log f_alpha(t|z), finite deep into the left tail where the density underflows.
double stable_log_density(const StableParams& p, double t, const NumericConfig& cfg = {});

/// True when stable_density_series would accept (p, t).
bool stable_series_converges(const StableParams& p, double t, const NumericConfig& cfg = {});

/// Kanter's function K(u) = [sin(a pi u)^a sin((1-a) pi u)^(1-a) / sin(pi u)]^(1/(1-a)).
double kanter_factor(double alpha, double u);

/// One draw of S_{alpha;z} via S = z^{1/a} (K(U)/E)^{(1-a)/a}.
double sample_stable(const StableParams& p, RngState& rng);

}  // namespace stablemix
