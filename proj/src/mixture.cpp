#include "stablemix/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "stablemix/errors.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

namespace stablemix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double mixing_log_density(const Mixing& m, double u, const NumericConfig& cfg) {
  return std::visit(
      Overloaded{[&](const MLParams& p) { return std::log(ml2_density(p, u, cfg)); },
                 [&](const GMLParams& p) { return std::log(gml_density(p, u, cfg)); },
                 [&](const GammaMixing& g) {
                   return g.shape * std::log(g.rate) - log_gamma(g.shape) + (g.shape - 1.0) * std::log(u) - g.rate * u;
                 },
                 [](const auto&) -> double { throw UnsupportedMixing("mixing law has no density"); }},
      m);
}

}  // namespace

MixtureSpec::MixtureSpec(double sigma, double z, Mixing mixing) : sigma_(sigma), z_(z), mixing_(std::move(mixing)) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConstraintError("MixtureSpec: sigma must be in (0, 1)");
  if (!(z > 0.0) || !std::isfinite(z)) throw ConstraintError("MixtureSpec: z must be > 0");
  std::visit(Overloaded{[](const PointMass& p) {
                          if (!(p.c > 0.0) || !std::isfinite(p.c)) throw ConstraintError("PointMass: c must be > 0");
                        },
                        [](const GammaMixing& g) {
                          if (!(g.shape > 0.0) || !(g.rate > 0.0))
                            throw ConstraintError("GammaMixing: shape and rate must be > 0");
                        },
                        [](const MomentSequence& m) {
                          if (m.moments.empty() || m.moments[0] != 1.0)
                            throw ConstraintError("MomentSequence: mu_0 must be 1");
                          for (double mu : m.moments)
                            if (!(mu > 0.0) || !std::isfinite(mu))
                              throw ConstraintError("MomentSequence: moments must be positive");
                        },
                        [](const auto&) {}},
             mixing_);
}

double MixtureSpec::log_moment(int k) const {
  if (k < 0) throw DomainError("moment order must be >= 0");
  return std::visit(
      Overloaded{[&](const PointMass& p) { return k * std::log(p.c); },
                 [&](const GammaMixing& g) { return log_gamma(g.shape + k) - log_gamma(g.shape) - k * std::log(g.rate); },
                 [&](const MLParams& p) { return ml2_log_moment(p, k); },
                 [&](const GMLParams& p) { return gml_log_moment(p, k); },
                 [&](const MomentSequence& m) {
                   if (k >= static_cast<int>(m.moments.size()))
                     throw NonConvergenceError("MomentSequence: not enough moments for the series");
                   return std::log(m.moments[k]);
                 }},
      mixing_);
}

MixtureQuadrature::MixtureQuadrature(MixtureSpec spec, NumericConfig cfg) : spec_(std::move(spec)), cfg_(cfg) {
  cfg_.validate();
  if (std::holds_alternative<MomentSequence>(spec_.mixing()))
    throw UnsupportedMixing("mixture_density_quadrature: MomentSequence mixing needs the series evaluator");
  if (std::holds_alternative<PointMass>(spec_.mixing()) || std::holds_alternative<GammaMixing>(spec_.mixing())) return;
  // Scan u p(u) from the mean outwards to find where the mixing mass ends.
  s_mid_ = spec_.log_moment(1);
  double peak = log_weight(s_mid_);
  double s = s_mid_;
  for (int i = 0; i < 400; ++i) {
    s += 0.5;
    const double lw = log_weight(s);
    peak = std::max(peak, lw);
    if (lw < peak - 42.0) break;
  }
  s_hi_ = s;
}

double MixtureQuadrature::log_weight(double s) const {
  auto it = cache_.find(s);
  if (it != cache_.end()) return it->second;
  const double lw = s + mixing_log_density(spec_.mixing(), std::exp(s), cfg_);
  cache_.emplace(s, lw);
  return lw;
}

double MixtureQuadrature::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("mixture_density_quadrature: t must be > 0");
  const double sig = spec_.sigma(), z = spec_.z();
  if (const auto* pm = std::get_if<PointMass>(&spec_.mixing()))
    return stable_density(StableParams(sig, z * pm->c), t, cfg_);
  if (const auto* g = std::get_if<GammaMixing>(&spec_.mixing()))
    return linnik_density(LinnikParams(sig, g->shape, g->rate, z), t, cfg_);
  // f(t | z e^s) is negligible beyond s_f + (1 - sig) log(800 / k0); below the
  // smaller of s_f and the mixing bulk both factors decay at least like e^s.
  const double s_f = sig * std::log(t) - std::log(z);
  const double k0 = std::exp((sig / (1.0 - sig)) * std::log(sig)) * (1.0 - sig);
  const double hi = std::min(s_hi_, s_f + (1.0 - sig) * std::log(800.0 / k0));
  const double lo = std::min(s_mid_ - 5.0, s_f) - 40.0;
  if (!(lo < hi)) return 0.0;
  std::vector<double> pts{lo};
  for (double s = std::ceil(lo); s < hi; s += 1.0)
    if (s > lo) pts.push_back(s);
  pts.push_back(hi);
  auto integrand = [&](double s) {
    const double f = stable_density(StableParams(sig, z * std::exp(s)), t, cfg_);
    return f == 0.0 ? 0.0 : f * std::exp(log_weight(s));
  };
  return integrate(integrand, std::span<const double>(pts), cfg_.quad()).value;
}

double mixture_density_quadrature(const MixtureSpec& m, double t, const NumericConfig& cfg) {
  return MixtureQuadrature(m, cfg)(t);
}

double mixture_density_series(const MixtureSpec& m, double t, const NumericConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("mixture_density_series: t must be > 0");
  cfg.validate();
  const double sig = m.sigma();
  const double log_x = std::log(m.z()) - sig * std::log(t);
  double sum = 0.0, comp = 0.0, abs_sum = 0.0;
  for (int k = 1; k <= cfg.series_max_terms; ++k) {
    const double mag = std::exp(k * log_x + log_gamma(sig * k + 1.0) - log_gamma(k + 1.0) + m.log_moment(k));
    if (!std::isfinite(mag)) break;
    const double tol = cfg.rel_tol * std::abs(sum + comp);
    if (k > 1 && mag < 0.1 * tol) {
      if (4.0 * kEps * abs_sum > tol) break;
      return (sum + comp) / (kPi * t);
    }
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * std::sin(kPi * sig * k) * mag;
    abs_sum += std::abs(term);
    const double s = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
    sum = s;
  }
  throw NonConvergenceError("mixture_density_series: series does not converge at this t");
}

double lamperti_density(double alpha, double z, double t) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConstraintError("lamperti_density: alpha must be in (0, 1)");
  if (!(z > 0.0)) throw ConstraintError("lamperti_density: z must be > 0");
  if (!(t > 0.0)) throw DomainError("lamperti_density: t must be > 0");
  const double ta = std::pow(t, alpha);
  return std::sin(kPi * alpha) / kPi * z * ta / t / (z * z + 2.0 * z * ta * std::cos(kPi * alpha) + ta * ta);
}

double lamperti_unit_density(double alpha, double z, double u) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConstraintError("lamperti_unit_density: alpha must be in (0, 1)");
  if (!(z > 0.0)) throw ConstraintError("lamperti_unit_density: z must be > 0");
  if (!(u > 0.0 && u < 1.0)) throw DomainError("lamperti_unit_density: u must be in (0, 1)");
  const double ua = std::pow(u, alpha), va = std::pow(1.0 - u, alpha);
  return std::sin(kPi * alpha) / kPi * z * ua * va / (u * (1.0 - u)) /
         (z * z * va * va + 2.0 * z * ua * va * std::cos(kPi * alpha) + ua * ua);
}

double lamperti_ratio_density(double alpha, double z) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConstraintError("lamperti_ratio_density: alpha must be in (0, 1)");
  if (!(z > 0.0)) throw DomainError("lamperti_ratio_density: z must be > 0");
  return std::sin(kPi * alpha) / (kPi * alpha) / (z * z + 2.0 * z * std::cos(kPi * alpha) + 1.0);
}

double lamperti_general_density(const GMLParams& p, double z, double t) {
  const double a = p.alpha(), th = p.theta(), g = p.gamma();
  if (std::abs(p.beta() + th - 1.0) > 1e-12) throw ConstraintError("lamperti_general_density: need beta + theta = 1");
  const double e = a * g + th;
  if (!(e > 0.0 && e <= 1.0 + 1e-12)) throw ConstraintError("lamperti_general_density: need 0 < alpha gamma + theta <= 1");
  if (!(z > 0.0)) throw ConstraintError("lamperti_general_density: z must be > 0");
  if (!(t > 0.0)) throw DomainError("lamperti_general_density: t must be > 0");
  const std::complex<double> base = z * std::polar(1.0, -kPi * a) + std::pow(t, a);
  // arg(base) lies in (-pi a, 0], so the principal power never crosses the cut.
  const std::complex<double> w = std::exp(-(g + th / a) * std::log(base));
  return std::pow(t, e - 1.0) * w.imag() / kPi;
}

}  // namespace stablemix
