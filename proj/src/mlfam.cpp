#include "stablemix/mlfam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "stablemix/convolve.hpp"
#include "stablemix/errors.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

namespace stablemix {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConstraintError(std::string(who) + ": alpha must be in (0, 1)");
}

void check_moment_order(int k) {
  if (k < 0) throw DomainError("moment order must be >= 0");
}

}  // namespace

MLParams::MLParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
  check_alpha(alpha, "MLParams");
  if (!(theta > -alpha) || !std::isfinite(theta)) throw ConstraintError("MLParams: theta must be > -alpha");
}

GMLParams::GMLParams(double alpha, double theta, double beta, double gamma)
    : alpha_(alpha), theta_(theta), beta_(beta), gamma_(gamma) {
  check_alpha(alpha, "GMLParams");
  if (!std::isfinite(theta) || !std::isfinite(beta) || !(gamma > 0.0) || !std::isfinite(gamma))
    throw ConstraintError("GMLParams: parameters must be finite with gamma > 0");
  if (!(-theta < alpha * gamma)) throw ConstraintError("GMLParams: need -theta < alpha * gamma");
  // Tolerate rounding in beta = alpha * gamma inputs.
  if (!(alpha * gamma <= beta * (1.0 + 1e-14))) throw ConstraintError("GMLParams: need alpha * gamma <= beta");
}

bool GMLParams::on_boundary() const {
  return std::abs(beta_ - alpha_ * gamma_) <= 1e-14 * std::max(1.0, std::abs(beta_));
}

LinnikParams::LinnikParams(double alpha, double shape, double rate, double z)
    : alpha_(alpha), shape_(shape), rate_(rate), z_(z) {
  check_alpha(alpha, "LinnikParams");
  if (!(shape > 0.0) || !(rate > 0.0) || !(z > 0.0) || !std::isfinite(shape) || !std::isfinite(rate) ||
      !std::isfinite(z))
    throw ConstraintError("LinnikParams: shape, rate and z must be > 0");
}

double ml_density(double alpha, double t, const NumericConfig& cfg) {
  check_alpha(alpha, "ml_density");
  if (!(t > 0.0)) throw DomainError("ml_density: t must be > 0");
  const double x = std::pow(t, -1.0 / alpha);
  if (!std::isfinite(x)) throw DomainError("ml_density: t too small");
  if (x == 0.0) return 0.0;
  return stable_density(StableParams(alpha), x, cfg) * x / (t * alpha);
}

double ml_log_density(double alpha, double t, const NumericConfig& cfg) {
  check_alpha(alpha, "ml_log_density");
  if (!(t > 0.0)) throw DomainError("ml_log_density: t must be > 0");
  const double log_x = -std::log(t) / alpha;
  if (log_x > 700.0) throw DomainError("ml_log_density: t too small");
  if (log_x < -700.0) return -std::numeric_limits<double>::infinity();
  return stable_log_density(StableParams(alpha), std::exp(log_x), cfg) + log_x - std::log(t * alpha);
}

double ml2_density(const MLParams& p, double t, const NumericConfig& cfg) {
  const double base = ml_density(p.alpha(), t, cfg);
  if (p.theta() == 0.0) return base;
  const double a = p.alpha(), th = p.theta();
  return std::exp(log_gamma(1.0 + th) - log_gamma(1.0 + th / a) + (th / a) * std::log(t)) * base;
}

double ml2_log_moment(const MLParams& p, double k) {
  if (!(k >= 0.0)) throw DomainError("moment order must be >= 0");
  const double a = p.alpha(), th = p.theta();
  return log_gamma(1.0 + th) + log_gamma(1.0 + k + th / a) - log_gamma(1.0 + th / a) - log_gamma(1.0 + k * a + th);
}

double ml2_moment(const MLParams& p, int k) {
  check_moment_order(k);
  return k == 0 ? 1.0 : std::exp(ml2_log_moment(p, k));
}

double ml2_laplace(const MLParams& p, double x, const SeriesConfig& scfg) {
  if (!(x >= 0.0)) throw DomainError("ml2_laplace: x must be >= 0");
  const double a = p.alpha(), th = p.theta();
  return gamma_fn(1.0 + th) * prabhakar_ml(PrabhakarParams(a, 1.0 + th, 1.0 + th / a), x, scfg);
}

double gml_density(const GMLParams& p, double t, const NumericConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("gml_density: t must be > 0");
  const double a = p.alpha(), th = p.theta(), b = p.beta(), g = p.gamma();
  const double nu = p.on_boundary() ? 0.0 : b - a * g;
  const double conv = gamma_stable_conv_direct(PowerKernel(nu), StableParams(a, t), 1.0, cfg);
  const double c = g + th / a;
  return std::exp(log_gamma(b + th) - log_gamma(c) + (c - 1.0) * std::log(t)) * conv;
}

double gml_log_moment(const GMLParams& p, double k) {
  if (!(k >= 0.0)) throw DomainError("moment order must be >= 0");
  const double a = p.alpha(), th = p.theta(), b = p.beta(), g = p.gamma();
  if (p.on_boundary()) return ml2_log_moment(MLParams(a, b + th), k);
  const double c = g + th / a;
  return log_gamma(b + th) + log_gamma(c + k) - log_gamma(c) - log_gamma(b + th + k * a);
}

double gml_moment(const GMLParams& p, int k) {
  check_moment_order(k);
  return k == 0 ? 1.0 : std::exp(gml_log_moment(p, k));
}

double gml_laplace(const GMLParams& p, double x, const SeriesConfig& scfg) {
  if (!(x >= 0.0)) throw DomainError("gml_laplace: x must be >= 0");
  const double a = p.alpha(), th = p.theta(), b = p.beta(), g = p.gamma();
  return gamma_fn(b + th) * prabhakar_ml(PrabhakarParams(a, b + th, g + th / a), x, scfg);
}

double linnik_density(const LinnikParams& p, double x, const NumericConfig& cfg) {
  if (!(x > 0.0)) throw DomainError("linnik_density: x must be > 0");
  cfg.validate();
  const double a = p.alpha(), g = p.shape(), lam = p.rate(), z = p.z();
  // u = e^s turns the gamma weight into lambda^g u^g e^{-lambda u} / Gamma(g) ds,
  // which decays like u^{g+1} on the left (f is linear in small scales).
  const double log_norm = g * std::log(lam) - log_gamma(g);
  auto integrand = [&](double s) {
    const double u = std::exp(s);
    const double lw = log_norm + g * s - lam * u;
    if (lw < -745.0) return 0.0;
    return stable_density(StableParams(a, z * u), x, cfg) * std::exp(lw);
  };
  const double u_typ = std::pow(x, a) / z;
  const double u_mean = g / lam;
  const double s_lo = std::log(std::min(u_typ, u_mean)) - 40.0 / (g + 1.0);
  const double s_hi = std::log((g + 10.0 * std::sqrt(g) + 60.0) / lam);
  std::vector<double> pts{s_lo};
  for (double s : {std::log(u_typ) - 2.0, std::log(u_typ), std::log(u_typ) + 2.0, std::log(u_mean)})
    if (s > s_lo && s < s_hi) pts.push_back(s);
  pts.push_back(s_hi);
  std::sort(pts.begin(), pts.end());
  return integrate(integrand, std::span<const double>(pts), cfg.quad()).value;
}

double linnik_laplace(const LinnikParams& p, double s) {
  if (!(s >= 0.0)) throw DomainError("linnik_laplace: s must be >= 0");
  return std::pow(p.rate() / (p.rate() + p.z() * std::pow(s, p.alpha())), p.shape());
}

double thorin_density(double alpha, double gamma_shape, double t) {
  check_alpha(alpha, "thorin_density");
  if (!(gamma_shape > 0.0)) throw ConstraintError("thorin_density: gamma must be > 0");
  if (!(t > 0.0)) throw DomainError("thorin_density: t must be > 0");
  const double ta = std::pow(t, alpha);
  return gamma_shape * alpha * std::sin(kPi * alpha) / kPi * ta / t / (1.0 + 2.0 * ta * std::cos(kPi * alpha) + ta * ta);
}

}  // namespace stablemix
