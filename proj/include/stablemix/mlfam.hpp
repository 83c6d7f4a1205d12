#pragma once

#include "stablemix/config.hpp"

namespace stablemix {

/// ML(alpha, theta): alpha in (0, 1), theta > -alpha.
class MLParams {
 public:
  MLParams(double alpha, double theta);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }

 private:
  double alpha_, theta_;
};

/// ML(alpha, theta | beta, gamma): alpha in (0, 1) and -theta < alpha gamma <= beta.
class GMLParams {
 public:
  GMLParams(double alpha, double theta, double beta, double gamma);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  /// beta == alpha gamma, where the law is ML(alpha, beta + theta).
  bool on_boundary() const;

 private:
  double alpha_, theta_, beta_, gamma_;
};

/// Positive Linnik law: S_{alpha; z G} with G ~ Gamma(shape, rate).
class LinnikParams {
 public:
  LinnikParams(double alpha, double shape, double rate, double z = 1.0);

  double alpha() const { return alpha_; }
  double shape() const { return shape_; }
  double rate() const { return rate_; }
  double z() const { return z_; }

 private:
  double alpha_, shape_, rate_, z_;
};

/// p_alpha(t) = f_alpha(t^{-1/alpha}) t^{-1/alpha - 1} / alpha.
double ml_density(double alpha, double t, const NumericConfig& cfg = {});

/// log p_alpha(t), finite where p_alpha underflows.
double ml_log_density(double alpha, double t, const NumericConfig& cfg = {});

/// Polynomially tilted density Gamma(1+theta)/Gamma(1+theta/alpha) t^{theta/alpha} p_alpha(t).
double ml2_density(const MLParams& p, double t, const NumericConfig& cfg = {});

/// E[M^k] for M ~ ML(alpha, theta).
double ml2_moment(const MLParams& p, int k);

/// log E[M^k]; finite where ml2_moment overflows.
double ml2_log_moment(const MLParams& p, double k);

/// E[e^{-x M}] = Gamma(1+theta) E^{1+theta/alpha}_{alpha,1+theta}(-x).
double ml2_laplace(const MLParams& p, double x, const SeriesConfig& scfg = {});

/// Density of ML(alpha, theta | beta, gamma) through the gamma-stable convolution at 1.
double gml_density(const GMLParams& p, double t, const NumericConfig& cfg = {});

/// E[M^k] for M ~ ML(alpha, theta | beta, gamma).
double gml_moment(const GMLParams& p, int k);

/// log E[M^k].
double gml_log_moment(const GMLParams& p, double k);

/// E[e^{-x M}] = Gamma(beta+theta) E^{gamma+theta/alpha}_{alpha,beta+theta}(-x).
double gml_laplace(const GMLParams& p, double x, const SeriesConfig& scfg = {});

/// l_alpha(x | gamma, lambda, z) = int f_alpha(x | z u) dG(u | gamma, lambda).
double linnik_density(const LinnikParams& p, double x, const NumericConfig& cfg = {});

/// (lambda / (lambda + z s^alpha))^gamma.
double linnik_laplace(const LinnikParams& p, double s);

/// Thorin density gamma alpha (sin pi alpha / pi) t^{alpha-1} / (1 + 2 t^alpha cos pi alpha + t^{2 alpha}).
double thorin_density(double alpha, double gamma_shape, double t);

}  // namespace stablemix
