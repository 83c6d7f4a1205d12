#pragma once

#include <utility>

#include "stablemix/config.hpp"
#include "stablemix/stable.hpp"

namespace stablemix {

/// rho_nu(t) = t^{nu-1} / Gamma(nu); nu = 0 stands for the delta kernel.
class PowerKernel {
 public:
  explicit PowerKernel(double nu);

  double nu() const { return nu_; }
  bool is_delta() const { return nu_ == 0.0; }
  double operator()(double t) const;

 private:
  double nu_;
};

/// (rho_nu * f_alpha(.|z))(t) = int_0^t rho_nu(t-v) f_alpha(v|z) dv.
/// For nu < 1 the endpoint singularity is removed with w = (t-v)^nu.
double gamma_stable_conv_direct(const PowerKernel& k, const StableParams& p, double t,
                                const NumericConfig& cfg = {});

/// Same quantity as the beta-weighted mixture
///   z^m / Gamma(m) int_0^1 f_alpha(t|z/u) u^{-m-1} (1-u)^{m-1} du,  m = nu/alpha.
double gamma_stable_conv_beta(const PowerKernel& k, const StableParams& p, double t,
                              const NumericConfig& cfg = {});

/// Both sides of the gamma-Linnik convolution lemma at x:
///   lhs = (rho_{beta - alpha gamma} * l_alpha(.|gamma, lambda))(x) by quadrature,
///   rhs = lambda^gamma x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha).
std::pair<double, double> gamma_linnik_conv_check(double alpha, double gamma_shape, double lambda,
                                                  double beta, double x, const NumericConfig& cfg = {});

}  // namespace stablemix
