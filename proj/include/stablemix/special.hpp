#pragma once

#include "stablemix/config.hpp"

namespace stablemix {

/// Gamma function.  Throws PoleError at non-positive integers and OverflowError when the
/// result exceeds the double range.
double gamma_fn(double x);

/// log|Gamma(x)|.
double log_gamma(double x);

/// 1/Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);

/// Parameters (alpha, beta, gamma) of the three-parameter Mittag-Leffler
/// (Prabhakar) function, all strictly positive.
class PrabhakarParams {
 public:
  PrabhakarParams(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  double alpha_, beta_, gamma_;
};

/// E^gamma_{alpha,beta}(-y) for y >= 0.
///
/// Three regimes: the power series (compensated summation) while its
/// largest term stays small, the algebraic large-argument expansion once
/// y >= cfg.asymptotic_crossover and the expansion reaches cfg.tail_tol,
/// and otherwise numerical inversion of the Laplace transform
/// s^(alpha*gamma-beta) / (s^alpha + y)^gamma on a parabolic contour.
double prabhakar_ml(const PrabhakarParams& p, double y, const SeriesConfig& cfg = {});

/// Which regime prabhakar_ml would use; exposed for tests.
enum class PrabhakarRegime { kSeries, kAsymptotic, kContour };
PrabhakarRegime prabhakar_regime(const PrabhakarParams& p, double y, const SeriesConfig& cfg = {});

/// Individual evaluators behind prabhakar_ml.  Each throws
/// NonConvergenceError when it cannot meet cfg.tail_tol.
double prabhakar_series(const PrabhakarParams& p, double y, const SeriesConfig& cfg = {});
double prabhakar_asymptotic(const PrabhakarParams& p, double y, const SeriesConfig& cfg = {});
double prabhakar_contour(const PrabhakarParams& p, double y);

/// Quadrature of  int_0^inf e^{-s x} x^{beta-1} E^gamma_{alpha,beta}(-lambda x^alpha) dx.
/// Test oracle for the closed transform s^(alpha*gamma-beta)/(lambda+s^alpha)^gamma.
double prabhakar_lt_lhs(const PrabhakarParams& p, double lambda, double s,
                        const SeriesConfig& cfg = {}, const NumericConfig& num = {});

/// Closed form of the transform above.
double prabhakar_lt_rhs(const PrabhakarParams& p, double lambda, double s);

}  // namespace stablemix
