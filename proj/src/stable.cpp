#include "stablemix/stable.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "stablemix/errors.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"

namespace stablemix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_density_args(const StableParams& p, double t, const char* who) {
  if (p.degenerate())
    throw DomainError(std::string(who) + ": alpha = 1 is a point mass, no density");
  if (!(t > 0.0)) throw DomainError(std::string(who) + ": t must be > 0");
}

// log|Gamma(ak+1)/k!| and sign(sin(pi a k)) * |sin(pi a k)| for k = 1..n.
struct SeriesCoefficients {
  std::vector<double> log_mag;
  std::vector<double> sine;
};

const SeriesCoefficients& series_coefficients(double alpha, int terms) {
  thread_local std::unordered_map<double, SeriesCoefficients> cache;
  auto& c = cache[alpha];
  if (static_cast<int>(c.log_mag.size()) < terms + 1) {
    if (cache.size() > 256) {
      cache.clear();
      return series_coefficients(alpha, terms);
    }
    c.log_mag.resize(terms + 1);
    c.sine.resize(terms + 1);
    for (int k = 1; k <= terms; ++k) {
      c.log_mag[k] = log_gamma(alpha * k + 1.0) - log_gamma(k + 1.0);
      c.sine[k] = std::sin(kPi * alpha * k);
    }
  }
  return c;
}

struct SeriesEval {
  double value = 0.0;
  bool ok = false;
};

// Unit-scale series f_a(x|1) = (1/(pi x)) sum_k (-1)^{k+1} sin(pi a k) Gamma(ak+1)/k! x^{-ak}.
// Accepted when the first omitted term and the rounding bound are both
// below rel_tol relative to the sum.
SeriesEval unit_series(double alpha, double x, double scale, const NumericConfig& cfg) {
  const int n = cfg.series_max_terms;
  const auto& c = series_coefficients(alpha, n);
  const double log_w = -alpha * std::log(x);
  const double pre = scale / (kPi * x);
  double sum = 0.0, comp = 0.0, abs_sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double mag = std::exp(c.log_mag[k] + k * log_w);
    const double tol = cfg.rel_tol * std::abs(sum + comp);
    if (k > 1 && mag < 0.1 * tol) return {(sum + comp) * pre, 4.0 * kEps * abs_sum <= tol};
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * c.sine[k] * mag;
    abs_sum += std::abs(term);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return {(sum + comp) * pre, false};
}

// log(sin(x) / x), accurate as x -> 0.
double log_sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return -x2 * (1.0 / 6.0 + x2 * (1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 / 37800.0)));
  }
  return std::log(std::sin(x) / x);
}

// D = log(K(u) / K(0+)) with u + v = 1.  The caller passes whichever of u, v
// is at most 1/2 exactly, so D keeps relative accuracy at both ends.
double kanter_log_ratio(double alpha, double u, double v) {
  const double b = 1.0 - alpha;
  const double denom = u <= 0.5 ? log_sinc(kPi * u) : std::log(std::sin(kPi * v) / (kPi * u));
  return (alpha * log_sinc(kPi * alpha * u) + b * log_sinc(kPi * b * u) - denom) / b;
}

// log K(0+) = log(a^{a/(1-a)} (1 - a)), the minimum of log K on (0, 1).
double log_kanter0(double alpha) { return (alpha / (1.0 - alpha)) * std::log(alpha) + std::log1p(-alpha); }

}  // namespace

StableParams::StableParams(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConstraintError("StableParams: alpha must be in (0, 1]");
  if (!(z > 0.0) || !std::isfinite(z)) throw ConstraintError("StableParams: z must be > 0");
}

double kanter_factor(double alpha, double u) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kanter_factor: alpha must be in (0, 1)");
  if (!(u > 0.0 && u < 1.0)) throw DomainError("kanter_factor: u must be in (0, 1)");
  return std::exp(log_kanter0(alpha) + kanter_log_ratio(alpha, u, 1.0 - u));
}

bool stable_series_converges(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_series_converges");
  const double s = std::pow(p.z(), -1.0 / p.alpha());
  return unit_series(p.alpha(), t * s, s, cfg).ok;
}

double stable_density_series(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_density_series");
  cfg.validate();
  const double s = std::pow(p.z(), -1.0 / p.alpha());
  const auto r = unit_series(p.alpha(), t * s, s, cfg);
  if (!r.ok) throw NonConvergenceError("stable_density_series: series does not reach rel_tol");
  return r.value;
}

double stable_density_integral(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_density_integral");
  cfg.validate();
  const double a = p.alpha();
  const double s = std::pow(p.z(), -1.0 / a);
  const double x = t * s;
  // Tolerances refer to the scaled result f(t|z) = s f(x|1).
  const double tol = cfg.abs_tol / s;
  const double psi = a <= 0.5 ? kPi : 0.5 * kPi + 0.25 * kPi * (1.0 - a) / a;
  const double c1 = std::cos(psi), s1 = std::sin(psi);
  const double ca = std::cos(a * psi), sa = std::sin(a * psi);
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double ra = std::pow(r, a);
    const double re = x * r * c1 - ra * ca;
    const double im = x * r * s1 - ra * sa + psi;
    return std::exp(re) * std::sin(im) / kPi;
  };
  const double log_cut = std::log(10.0 / tol);
  double r_max = log_cut / (x * std::abs(c1));
  if (ca > 1e-12) r_max = std::min(r_max, std::pow(log_cut / ca, 1.0 / a));
  // Panels on an r^a grid so each holds a bounded share of the oscillation.
  const double phase = std::abs(x * r_max * s1 - std::pow(r_max, a) * sa);
  const int panels = static_cast<int>(std::clamp(std::ceil(phase / kPi) + 1.0, 8.0, 400.0));
  std::vector<double> pts(panels + 1);
  for (int j = 0; j <= panels; ++j) pts[j] = r_max * std::pow(static_cast<double>(j) / panels, 1.0 / a);
  QuadOptions opt = cfg.quad();
  opt.abs_tol = tol;
  const double v = integrate(integrand, std::span<const double>(pts), opt).value;
  return std::max(0.0, v) * s;
}

namespace {

// log f via  f1(x) = (a/(1-a)) x^{-1/(1-a)} int_0^1 K(u) exp(-K(u) w) du,
// w = x^{-a/(1-a)}.  The integrand is written as K w exp(-k0 w expm1(D)) with
// D = log(K/k0) and e^{-k0 w} moved to the prefactor, and the range is split
// at u = 1/2 so each half is parametrised by its distance to the nearer end.
// The mass crowds towards u = 0 in the left tail and towards u = 1 in the
// right tail.  With `bounded_ok` the evaluation stops early at -inf once an
// upper bound shows the density underflows.
double zolotarev_log(const StableParams& p, double t, const NumericConfig& cfg, bool bounded_ok) {
  const double a = p.alpha();
  const double b = 1.0 - a;
  const double s = std::pow(p.z(), -1.0 / a);
  const double x = t * s;
  const double log_w = -(a / b) * std::log(x);
  const double lk0 = log_kanter0(a);
  const double k0w = std::exp(lk0 + log_w);
  const double log_pre = std::log(a / b) - std::log(x) / b - k0w;
  if (!std::isfinite(log_pre)) return log_pre;
  // K w e^{-K w} <= 1/e, so the scaled integral is at most 1.
  if (bounded_ok && log_pre - log_w < -800.0) return -std::numeric_limits<double>::infinity();
  auto weight = [&](double d) {
    // k0 w expm1(d) without 0 * inf when w underflows.
    const double decay = d > 1.0 ? std::exp(lk0 + log_w + d + std::log1p(-std::exp(-d))) : k0w * std::expm1(d);
    return std::exp(lk0 + log_w + d - decay);
  };
  auto left = [&](double u) { return u <= 0.0 ? 0.0 : weight(kanter_log_ratio(a, u, 1.0 - u)); };
  auto right = [&](double v) { return v <= 0.0 ? 0.0 : weight(kanter_log_ratio(a, 1.0 - v, v)); };
  // Characteristic point: k0 w expm1(D) = 1, i.e. K w = 1 + k0 w.  Left of it
  // (in u) the exponential factor is flat, right of it it collapses.
  auto excess = [&](double d) { return lk0 + log_w + (d > 1.0 ? d + std::log1p(-std::exp(-d)) : std::log(std::expm1(d))); };
  const bool in_left = excess(kanter_log_ratio(a, 0.5, 0.5)) >= 0.0;
  double lo = std::log(1e-300), hi = std::log(0.5);
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r = std::exp(mid);
    const double d = in_left ? kanter_log_ratio(a, r, 1.0 - r) : kanter_log_ratio(a, 1.0 - r, r);
    // D grows with u and shrinks with v.
    ((excess(d) < 0.0) == in_left ? lo : hi) = mid;
  }
  const double star = std::exp(0.5 * (lo + hi));
  QuadOptions opt = cfg.quad();
  opt.rel_tol = std::max(cfg.rel_tol, 1e-13);
  auto decades = [](double from, std::vector<double>& pts) {
    for (double f = 10.0 * from; f < 0.5; f *= 10.0) pts.push_back(f);
  };
  std::vector<double> main_pts{0.0};
  if (in_left) {
    // Flat below star, super-exponential decay above.
    for (double f : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0})
      if (f * star < 0.5) main_pts.push_back(f * star);
  } else {
    // Super-exponential decay below star (in v), power decay above.
    for (double f : {0.01, 0.1, 0.5, 1.0, 2.0})
      if (f * star < 0.5) main_pts.push_back(f * star);
    decades(2.0 * star, main_pts);
  }
  main_pts.push_back(0.5);
  std::sort(main_pts.begin(), main_pts.end());
  main_pts.erase(std::unique(main_pts.begin(), main_pts.end()), main_pts.end());
  opt.abs_tol = 1e-300;
  const double main = in_left ? integrate(left, std::span<const double>(main_pts), opt).value
                              : integrate(right, std::span<const double>(main_pts), opt).value;
  // Past the characteristic point the integrand is monotone towards u = 1/2,
  // so its value there bounds the other half.
  const double edge = in_left ? right(0.5) : left(0.5);
  const bool monotone = in_left || k0w < 1e-3;
  if (monotone && 0.5 * std::exp(1.0) * edge < 1e-17 * main)
    return log_pre - log_w + std::log(main) + std::log(s);
  std::vector<double> other_pts{0.0};
  decades(1e-16, other_pts);
  other_pts.push_back(0.5);
  opt.abs_tol = std::max(1e-300, 1e-17 * main);
  const double other = in_left ? integrate(right, std::span<const double>(other_pts), opt).value
                               : integrate(left, std::span<const double>(other_pts), opt).value;
  return log_pre - log_w + std::log(main + other) + std::log(s);
}

}  // namespace

double stable_density_zolotarev(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_density_zolotarev");
  cfg.validate();
  return std::exp(zolotarev_log(p, t, cfg, true));
}

double stable_log_density(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_log_density");
  const double s = std::pow(p.z(), -1.0 / p.alpha());
  const auto r = unit_series(p.alpha(), t * s, s, cfg);
  if (r.ok && r.value > 0.0) return std::log(r.value);
  cfg.validate();
  return zolotarev_log(p, t, cfg, false);
}

double stable_density(const StableParams& p, double t, const NumericConfig& cfg) {
  require_density_args(p, t, "stable_density");
  const double s = std::pow(p.z(), -1.0 / p.alpha());
  const auto r = unit_series(p.alpha(), t * s, s, cfg);
  if (r.ok) return r.value;
  cfg.validate();
  return std::exp(zolotarev_log(p, t, cfg, true));
}

double sample_stable(const StableParams& p, RngState& rng) {
  if (p.degenerate()) return p.z();
  const double a = p.alpha();
  const double k = kanter_factor(a, rng.uniform());
  const double e = rng.exponential();
  return std::pow(p.z(), 1.0 / a) * std::pow(k / e, (1.0 - a) / a);
}

}  // namespace stablemix
