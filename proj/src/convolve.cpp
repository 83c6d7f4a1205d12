#include "stablemix/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablemix/errors.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"

namespace stablemix {

namespace {

// Scale-aware breakpoints: the stable density with scale z lives on
// t ~ z^{1/alpha}; add a few multiples of that inside (lo, hi).
std::vector<double> breakpoints(double lo, double hi, double scale) {
  std::vector<double> pts{lo};
  for (double f : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double x = f * scale;
    if (x > lo && x < hi) pts.push_back(x);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Generic convolution of rho_nu with a density g on (0, t), split at t/2.
// On the right half the kernel singularity (t-v)^{nu-1}, nu < 1, is removed
// with w = (t-v)^nu.  The left half is integrated in v, or in s = log v when g
// has an integrable power singularity g(v) ~ v^{kappa-1} at 0 (left_kappa > 0).
template <class G>
double power_convolution(double nu, G&& g, double t, double scale, const NumericConfig& cfg,
                         double left_kappa = 0.0) {
  if (nu == 0.0) return g(t);
  const double mid = 0.5 * t;
  double left = 0.0;
  if (left_kappa > 0.0) {
    auto integrand = [&](double s) {
      const double v = std::exp(s);
      return v * std::pow(t - v, nu - 1.0) * g(v);
    };
    const double s_hi = std::log(mid);
    left = integrate(integrand, s_hi - 40.0 / std::min(left_kappa, 1.0), s_hi, cfg.quad()).value;
  } else {
    // Past 20 scales g is a power tail, smooth in log v however many decades
    // separate the scale from t.
    const double v_tail = std::min(mid, 20.0 * scale);
    auto integrand = [&](double v) { return v <= 0.0 ? 0.0 : std::pow(t - v, nu - 1.0) * g(v); };
    const auto pts = breakpoints(0.0, v_tail, scale);
    left = integrate(integrand, std::span<const double>(pts), cfg.quad()).value;
    if (v_tail < mid) {
      auto log_integrand = [&](double s) {
        const double v = std::exp(s);
        return v * std::pow(t - v, nu - 1.0) * g(v);
      };
      const double s0 = std::log(v_tail), s1 = std::log(mid);
      std::vector<double> spts{s0};
      for (double s = std::ceil(s0); s < s1; s += 4.0)
        if (s > s0) spts.push_back(s);
      spts.push_back(s1);
      left += integrate(log_integrand, std::span<const double>(spts), cfg.quad()).value;
    }
  }
  left *= rgamma(nu);
  if (nu >= 1.0) {
    auto integrand = [&](double v) { return std::pow(t - v, nu - 1.0) * g(v); };
    const auto pts = breakpoints(mid, t, scale);
    return left + integrate(integrand, std::span<const double>(pts), cfg.quad()).value * rgamma(nu);
  }
  // rho_nu(t - v) dv = dw / Gamma(nu + 1).
  auto integrand = [&](double w) { return g(t - std::pow(w, 1.0 / nu)); };
  auto pts = breakpoints(mid, t, scale);
  for (auto& x : pts) x = std::pow(t - x, nu);
  std::sort(pts.begin(), pts.end());
  return left + integrate(integrand, std::span<const double>(pts), cfg.quad()).value * rgamma(nu + 1.0);
}

}  // namespace

PowerKernel::PowerKernel(double nu) : nu_(nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConstraintError("PowerKernel: nu must be >= 0");
}

double PowerKernel::operator()(double t) const {
  if (is_delta()) throw DomainError("PowerKernel: the delta kernel has no pointwise value");
  if (!(t > 0.0)) return 0.0;
  return std::exp((nu_ - 1.0) * std::log(t) - log_gamma(nu_));
}

double gamma_stable_conv_direct(const PowerKernel& k, const StableParams& p, double t, const NumericConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("gamma_stable_conv_direct: t must be > 0");
  if (p.degenerate()) return t > p.z() && !k.is_delta() ? k(t - p.z()) : 0.0;
  cfg.validate();
  auto g = [&](double v) { return stable_density(p, v, cfg); };
  return power_convolution(k.nu(), g, t, std::pow(p.z(), 1.0 / p.alpha()), cfg);
}

double gamma_stable_conv_beta(const PowerKernel& k, const StableParams& p, double t, const NumericConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("gamma_stable_conv_beta: t must be > 0");
  if (p.degenerate()) return gamma_stable_conv_direct(k, p, t, cfg);
  if (k.is_delta()) return stable_density(p, t, cfg);
  cfg.validate();
  const double a = p.alpha();
  const double z = p.z();
  const double m = k.nu() / a;
  auto f_at = [&](double u) {
    if (u <= 0.0) return 0.0;
    return stable_density(StableParams(a, z / u), t, cfg) * std::exp(-(m + 1.0) * std::log(u));
  };
  // The mass sits where t is typical for scale z/u, i.e. u ~ z t^{-alpha}.
  // Split at u = 1/2 and substitute w = (1-u)^m only on the right half.
  const double peak = z * std::pow(t, -a);
  std::vector<double> upts{0.0};
  for (double f : {0.02, 0.1, 0.3, 1.0, 3.0})
    if (f * peak < 0.5) upts.push_back(f * peak);
  upts.push_back(0.5);
  auto left_integrand = [&](double u) { return f_at(u) * std::pow(1.0 - u, m - 1.0); };
  double total = integrate(left_integrand, std::span<const double>(upts), cfg.quad()).value;
  if (m >= 1.0) {
    total += integrate(left_integrand, 0.5, 1.0, cfg.quad()).value;
  } else {
    // (1-u)^{m-1} du = dw / m.
    auto integrand = [&](double w) { return f_at(1.0 - std::pow(w, 1.0 / m)) / m; };
    std::vector<double> wpts{0.0};
    for (double f : {0.3, 1.0, 3.0})
      if (f * peak > 0.5 && f * peak < 1.0) wpts.push_back(std::pow(1.0 - f * peak, m));
    wpts.push_back(std::pow(0.5, m));
    std::sort(wpts.begin(), wpts.end());
    total += integrate(integrand, std::span<const double>(wpts), cfg.quad()).value;
  }
  return total * std::exp(m * std::log(z) - log_gamma(m));
}

std::pair<double, double> gamma_linnik_conv_check(double alpha, double gamma_shape, double lambda, double beta,
                                                  double x, const NumericConfig& cfg) {
  const LinnikParams lp(alpha, gamma_shape, lambda, 1.0);
  const double nu = beta - alpha * gamma_shape;
  if (nu < 0.0) throw ConstraintError("gamma_linnik_conv_check: need beta >= alpha * gamma");
  if (!(x > 0.0)) throw DomainError("gamma_linnik_conv_check: x must be > 0");
  auto g = [&](double v) { return linnik_density(lp, v, cfg); };
  const double lhs = power_convolution(nu, g, x, std::pow(gamma_shape / lambda, 1.0 / alpha), cfg,
                                        alpha * gamma_shape);
  const double rhs = std::pow(lambda, gamma_shape) * std::pow(x, beta - 1.0) *
                     prabhakar_ml(PrabhakarParams(alpha, beta, gamma_shape), lambda * std::pow(x, alpha));
  return {lhs, rhs};
}

}  // namespace stablemix
