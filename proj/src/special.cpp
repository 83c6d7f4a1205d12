#include "stablemix/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "stablemix/errors.hpp"
#include "stablemix/quadrature.hpp"

namespace stablemix {

namespace {

constexpr double kPi = std::numbers::pi;
bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (is_pole(x)) throw PoleError("gamma_fn: pole at " + std::to_string(x));
  const double r = std::tgamma(x);
  if (!std::isfinite(r)) throw OverflowError("gamma_fn: overflow at " + std::to_string(x));
  return r;
}

double log_gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_pole(x)) throw PoleError("log_gamma: pole at " + std::to_string(x));
  return std::lgamma(x);
}

double rgamma(double x) {
  if (is_pole(x)) return 0.0;
  const double r = std::tgamma(x);
  if (std::isfinite(r) && r != 0.0) return 1.0 / r;
  // |Gamma| out of range: 1/Gamma underflows (x large) or overflows (x very negative).
  const double sign = x > 0.0 || std::fmod(std::floor(x), 2.0) == 0.0 ? 1.0 : -1.0;
  return sign * std::exp(-std::lgamma(x));
}

PrabhakarParams::PrabhakarParams(double alpha, double beta, double gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
    throw ConstraintError("PrabhakarParams: alpha, beta, gamma must be positive");
}

void SeriesConfig::validate() const {
  if (max_terms < 1 || !(tail_tol > 0.0) || !(asymptotic_crossover > 0.0))
    throw ArgumentError("SeriesConfig: max_terms >= 1, tail_tol > 0, asymptotic_crossover > 0");
}

void NumericConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1 || series_max_terms < 1)
    throw ArgumentError("NumericConfig: tolerances must be positive");
}

namespace {

// log|k-th series term| of E^g_{a,b}(-y), y > 0.
double log_series_term(const PrabhakarParams& p, int k, double log_y) {
  return log_gamma(p.gamma() + k) - log_gamma(p.gamma()) - log_gamma(k + 1.0) -
         log_gamma(p.alpha() * k + p.beta()) + k * log_y;
}

struct SeriesPlan {
  int terms = 0;          // number of terms needed to reach the tail tolerance
  double log_max = 0.0;   // log of the largest term
  bool feasible = false;
};

SeriesPlan plan_series(const PrabhakarParams& p, double y, const SeriesConfig& cfg) {
  SeriesPlan plan;
  if (y == 0.0) return {1, -log_gamma(p.beta()), true};
  const double log_y = std::log(y);
  const double log_tol = std::log(cfg.tail_tol) - std::log(100.0);
  plan.log_max = -1e300;
  double prev = 1e300;
  for (int k = 0; k <= cfg.max_terms; ++k) {
    const double lt = log_series_term(p, k, log_y);
    plan.log_max = std::max(plan.log_max, lt);
    if (lt < log_tol && lt < prev) {
      plan.terms = k;
      plan.feasible = true;
      return plan;
    }
    prev = lt;
  }
  return plan;
}

}  // namespace

double prabhakar_series(const PrabhakarParams& p, double y, const SeriesConfig& cfg) {
  cfg.validate();
  if (y < 0.0) throw DomainError("prabhakar_series: y must be >= 0");
  const auto plan = plan_series(p, y, cfg);
  if (!plan.feasible)
    throw NonConvergenceError("prabhakar_series: tail not below tolerance within max_terms");
  if (y == 0.0) return rgamma(p.beta());
  const double log_y = std::log(y);
  // Neumaier compensated summation of the alternating series.  Terms are
  // built as c_k / Gamma(a k + b) with c_k = Gamma(g + k) y^k / (Gamma(g) k!)
  // by recurrence, which keeps them accurate to a few ulps; exp of a
  // log-gamma difference loses |log term| ulps.
  double sum = 0.0, comp = 0.0;
  double c = 1.0;
  for (int k = 0; k <= plan.terms; ++k) {
    if (k > 0) c *= (p.gamma() + k - 1.0) / k * y;
    const double x = p.alpha() * k + p.beta();
    const double mag = std::isfinite(c) && c < 1e300 && x < 170.0 ? c / std::tgamma(x)
                                                                 : std::exp(log_series_term(p, k, log_y));
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * mag;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double prabhakar_asymptotic(const PrabhakarParams& p, double y, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(y > 0.0)) throw DomainError("prabhakar_asymptotic: y must be > 0");
  const double a = p.alpha(), b = p.beta(), g = p.gamma();
  const double log_y = std::log(y);
  const double lg_g = log_gamma(g);
  double sum = 0.0, comp = 0.0;
  double previous = 1e300;
  double error = 1e300;
  for (int k = 0; k <= cfg.max_terms; ++k) {
    const double x = b - a * (g + k);
    const double rg = rgamma(x);
    const double log_mag = log_gamma(g + k) - lg_g - log_gamma(k + 1.0) - (g + k) * log_y;
    // |1/Gamma(x)| <= Gamma(1-x)/pi for x < 1/2; the bound ignores the
    // sin(pi x) factor so zero terms do not stop the expansion early.
    const double envelope =
        x < 0.5 ? std::exp(log_mag + log_gamma(1.0 - x)) / kPi : std::exp(log_mag) * std::abs(rg);
    if (k > 2 && envelope > previous) break;  // past the smallest term
    error = envelope;
    previous = envelope;
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * std::exp(log_mag) * rg;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (envelope < 1e-3 * cfg.tail_tol) break;
  }
  if (!(error <= cfg.tail_tol))
    throw NonConvergenceError("prabhakar_asymptotic: smallest term above tolerance");
  return sum + comp;
}

double prabhakar_contour(const PrabhakarParams& p, double y) {
  if (y < 0.0) throw DomainError("prabhakar_contour: y must be >= 0");
  if (p.alpha() > 1.0)
    throw NonConvergenceError("prabhakar_contour: contour inversion requires alpha <= 1");
  using cd = std::complex<double>;
  // Bromwich inversion at t = 1 of F(s) = s^(ag-b) / (s^a + y)^g on the
  // parabola s(u) = mu (1 + i u)^2 with the trapezoidal rule.  The singular
  // points s^a = -y lie off the principal sheet for a < 1, so a small mu is
  // allowed; it keeps e^mu, the cancellation factor, near 7.
  constexpr double kMu = 2.0;
  constexpr double kStep = 0.1;
  const double a = p.alpha(), b = p.beta(), g = p.gamma();
  auto integrand = [&](double u) {
    const cd w(1.0, u);
    const cd s = kMu * w * w;
    const cd log_s = std::log(s);
    const cd sa = std::exp(a * log_s);
    const cd value = std::exp(s + (a * g - b) * log_s - g * std::log(sa + y));
    return value * w;
  };
  double acc = 0.5 * integrand(0.0).real();
  for (int k = 1; k <= 400; ++k) {
    const cd v = integrand(k * kStep);
    acc += v.real();
    if (std::abs(v) < 1e-18 && k > 20) break;
  }
  return 2.0 * kMu * kStep / kPi * acc;
}

PrabhakarRegime prabhakar_regime(const PrabhakarParams& p, double y, const SeriesConfig& cfg) {
  cfg.validate();
  if (y < 0.0) throw DomainError("prabhakar_ml: y must be >= 0");
  const auto plan = plan_series(p, y, cfg);
  // Series is used while the largest term keeps rounding error below tail_tol.
  if (plan.feasible &&
      std::exp(plan.log_max) * 8.0 * std::numeric_limits<double>::epsilon() <= cfg.tail_tol)
    return PrabhakarRegime::kSeries;
  if (y >= cfg.asymptotic_crossover) {
    try {
      (void)prabhakar_asymptotic(p, y, cfg);
      return PrabhakarRegime::kAsymptotic;
    } catch (const NonConvergenceError&) {
    }
  }
  if (p.alpha() <= 1.0) return PrabhakarRegime::kContour;
  if (plan.feasible) return PrabhakarRegime::kSeries;
  throw NonConvergenceError("prabhakar_ml: no regime reaches the tolerance for alpha > 1");
}

double prabhakar_ml(const PrabhakarParams& p, double y, const SeriesConfig& cfg) {
  switch (prabhakar_regime(p, y, cfg)) {
    case PrabhakarRegime::kSeries:
      return prabhakar_series(p, y, cfg);
    case PrabhakarRegime::kAsymptotic:
      return prabhakar_asymptotic(p, y, cfg);
    case PrabhakarRegime::kContour:
      return prabhakar_contour(p, y);
  }
  return 0.0;
}

double prabhakar_lt_rhs(const PrabhakarParams& p, double lambda, double s) {
  if (!(lambda > 0.0) || !(s > 0.0)) throw DomainError("prabhakar_lt_rhs: lambda, s must be > 0");
  return std::pow(s, p.alpha() * p.gamma() - p.beta()) /
         std::pow(lambda + std::pow(s, p.alpha()), p.gamma());
}

double prabhakar_lt_lhs(const PrabhakarParams& p, double lambda, double s, const SeriesConfig& cfg,
                        const NumericConfig& num) {
  if (!(lambda > 0.0) || !(s > 0.0)) throw DomainError("prabhakar_lt_lhs: lambda, s must be > 0");
  num.validate();
  const double b = p.beta();
  // x = w^(1/b) absorbs x^(b-1) dx = dw / b.
  auto integrand = [&](double w) {
    if (w <= 0.0) return rgamma(b);
    const double x = std::pow(w, 1.0 / b);
    const double decay = std::exp(-s * x);
    if (decay == 0.0) return 0.0;
    return decay * prabhakar_ml(p, lambda * std::pow(x, p.alpha()), cfg);
  };
  QuadOptions opt{num.abs_tol, num.rel_tol, num.max_subdivisions, true};
  // Split at x = 1/s so the exponential scale is resolved before the tail map.
  const double w1 = std::pow(1.0 / s, b);
  const double head = integrate(integrand, 0.0, w1, opt).value;
  const double tail = integrate_to_infinity(integrand, w1, opt).value;
  return (head + tail) / b;
}

}  // namespace stablemix
