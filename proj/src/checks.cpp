#include "stablemix/checks.hpp"

#include <algorithm>
#include <numbers>

#include "stablemix/chain.hpp"
#include "stablemix/convolve.hpp"
#include "stablemix/errors.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

namespace stablemix {

namespace {

constexpr double kPi = std::numbers::pi;

// Looser than the library defaults; the checks compare at 1e-5 .. 1e-8.
const NumericConfig kCfg{1e-12, 1e-10};
const QuadOptions kLtQuad{1e-12, 1e-10};

TestReport verdict(std::string name, double dev, double tol, std::size_t n) {
  const bool ok = dev <= tol;
  return {std::move(name), dev, ok ? 1.0 : 0.0, n, ok};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return g;
}

// Largest |numeric LT - closed form| over x in {0.5, 1, 2}.
template <class F, class L>
double lt_deviation(F&& f, L&& closed, double s_lo) {
  double dev = 0.0;
  for (double x : {0.5, 1.0, 2.0}) dev = std::max(dev, std::abs(numeric_laplace(f, x, s_lo, kLtQuad) - closed(x)));
  return dev;
}

// Integral of a density on (0, inf) taken in s = log t.
template <class F>
double log_mass(F&& f, double s_lo, double s_hi) {
  std::vector<double> pts;
  for (double s = s_lo; s < s_hi; s += 10.0) pts.push_back(s);
  pts.push_back(s_hi);
  return integrate([&](double s) { return std::exp(s) * f(std::exp(s)); }, std::span<const double>(pts), kLtQuad)
      .value;
}

TestReport stable_closed_form() {
  double dev = 0.0;
  std::size_t n = 0;
  for (double z : {0.5, 1.0, 2.0})
    for (double t : log_grid(0.05, 50.0, 200)) {
      const double exact = z / (2.0 * std::sqrt(kPi)) * std::pow(t, -1.5) * std::exp(-z * z / (4.0 * t));
      dev = std::max(dev, std::abs(stable_density(StableParams(0.5, z), t, kCfg) - exact));
      ++n;
    }
  return verdict("stable-closed-form", dev, 1e-8, n);
}

TestReport ml_closed_form() {
  double dev = 0.0;
  const auto grid = log_grid(0.05, 50.0, 200);
  for (double t : grid) dev = std::max(dev, std::abs(ml_density(0.5, t, kCfg) - std::exp(-t * t / 4.0) / std::sqrt(kPi)));
  return verdict("ml-closed-form", dev, 1e-8, grid.size());
}

TestReport stable_lt() {
  double dev = 0.0;
  for (double a : {0.3, 0.7}) {
    const StableParams p(a, 1.5);
    dev = std::max(dev, lt_deviation([&](double t) { return stable_density(p, t, kCfg); },
                                     [&](double x) { return std::exp(-1.5 * std::pow(x, a)); }, -30.0));
  }
  return verdict("stable-lt", dev, 1e-5, 6);
}

TestReport linnik_lt() {
  const LinnikParams p(0.5, 1.5, 2.0, 1.0);
  const double dev = lt_deviation([&](double t) { return linnik_density(p, t, kCfg); },
                                  [&](double x) { return linnik_laplace(p, x); }, -50.0);
  return verdict("linnik-lt", dev, 1e-5, 3);
}

TestReport ml_lt() {
  const MLParams p(0.6, 0.4);
  const double dev = lt_deviation([&](double t) { return ml2_density(p, t, kCfg); },
                                  [&](double x) { return ml2_laplace(p, x); }, -30.0);
  return verdict("ml-lt", dev, 1e-5, 3);
}

TestReport gml_lt() {
  const GMLParams p(0.6, 0.1, 1.2, 1.5);
  const double dev = lt_deviation([&](double t) { return gml_density(p, t, kCfg); },
                                  [&](double x) { return gml_laplace(p, x); }, -40.0);
  return verdict("gml-lt", dev, 1e-5, 3);
}

TestReport lamperti_lt() {
  // T = S_{a;z}/S'_{a;1} has E e^{-xT} = E e^{-z x^a M} with M ~ ML(a, 0).
  const double a = 0.5, z = 1.0;
  const double dev = lt_deviation([&](double t) { return lamperti_density(a, z, t); },
                                  [&](double x) { return ml2_laplace(MLParams(a, 0.0), z * std::pow(x, a)); }, -80.0);
  return verdict("lamperti-lt", dev, 1e-5, 3);
}

TestReport mixture_lt() {
  const double sigma = 0.7, z = 1.0;
  const MLParams u(0.5, 0.3);
  const MixtureQuadrature h(MixtureSpec(sigma, z, u), kCfg);
  const double dev = lt_deviation([&](double t) { return h(t); },
                                  [&](double x) { return ml2_laplace(u, z * std::pow(x, sigma)); }, -40.0);
  return verdict("mixture-lt", dev, 1e-5, 3);
}

TestReport convolution_forms() {
  double dev = 0.0;
  std::size_t n = 0;
  for (double nu : {0.3, 1.5})
    for (double a : {0.4, 0.7})
      for (double t : {0.5, 2.0}) {
        const PowerKernel k(nu);
        const StableParams p(a, 1.0);
        dev = std::max(dev, std::abs(gamma_stable_conv_direct(k, p, t, kCfg) - gamma_stable_conv_beta(k, p, t, kCfg)));
        ++n;
      }
  return verdict("convolution-forms", dev, 1e-6, n);
}

TestReport gml_reduction() {
  double dev = 0.0;
  const auto grid = log_grid(0.1, 3.0, 20);
  const MLParams ml(0.6, 0.2), ml_shift(0.6, 1.1);
  const GMLParams unit(0.6, 0.2, 1.0, 1.0), edge(0.6, 0.2, 0.9, 1.5);
  for (double t : grid) {
    dev = std::max(dev, std::abs(gml_density(unit, t, kCfg) - ml2_density(ml, t, kCfg)));
    dev = std::max(dev, std::abs(gml_density(edge, t, kCfg) - ml2_density(ml_shift, t, kCfg)));
  }
  return verdict("gml-reduction", dev, 1e-8, 2 * grid.size());
}

TestReport lamperti_normalization() {
  const double a = 0.6, z = 1.3;
  // Tails decay like e^{-a |s|} in s = log t.
  double dev = std::abs(log_mass([&](double t) { return lamperti_density(a, z, t); }, -120.0, 120.0) - 1.0);
  dev = std::max(dev, std::abs(log_mass([&](double v) { return lamperti_ratio_density(a, v); }, -60.0, 60.0) - 1.0));
  // Unit form in the logit variable.
  std::vector<double> pts;
  for (double y = -36.0; y < 36.0; y += 6.0) pts.push_back(y);
  pts.push_back(36.0);
  const double unit = integrate(
      [&](double y) {
        const double u = 1.0 / (1.0 + std::exp(-y));
        return lamperti_unit_density(a, z, u) * u * (1.0 - u);
      },
      std::span<const double>(pts), kLtQuad).value;
  // |y| > 36 is where u rounds to 0 or 1; that mass is about e^{-36 a} and is ignored.
  dev = std::max(dev, std::abs(unit - 1.0));
  return verdict("lamperti-normalization", dev, 1e-8, 3);
}

TestReport chain_normalization() {
  double dev = 0.0;
  std::size_t n = 0;
  for (double a : {0.4, 0.7})
    for (double t : {0.5, 2.0}) {
      // w = (u-t)^kappa / kappa absorbs the (u-t)^{kappa-1} factor.  Below d0
      // the kernel is (a t / Gamma(kappa)) d^{kappa-1} to relative O(d0).
      const double kappa = 1.0 / a - 1.0, d0 = 1e-9 * t;
      const double head = a * t * std::pow(d0, kappa) / (kappa * gamma_fn(kappa));
      const double w0 = std::pow(d0, kappa) / kappa;
      const double tail = integrate_to_infinity(
          [&](double w) {
            const double d = std::pow(kappa * w, 1.0 / kappa);
            return transition_density(a, t, t + d, kCfg) * d / (kappa * w);
          },
          w0, kLtQuad).value;
      dev = std::max(dev, std::abs(head + tail - 1.0));
      ++n;
    }
  return verdict("chain-normalization", dev, 1e-6, n);
}

TestReport joint_consistency_check() {
  double dev = 0.0;
  for (auto [a, th, k, t, u] : {std::tuple{0.5, 0.0, 0, 1.0, 2.0}, std::tuple{0.7, 0.2, 1, 0.5, 1.5},
                                std::tuple{0.4, 1.0, 2, 2.0, 2.5}}) {
    const auto [lhs, rhs] = joint_consistency(a, th, k, t, u, kCfg);
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return verdict("chain-joint", dev, 1e-6, 3);
}

}  // namespace

const std::vector<AnalyticCheck>& analytic_checks() {
  static const std::vector<AnalyticCheck> checks{
      {"stable-closed-form", stable_closed_form},
      {"ml-closed-form", ml_closed_form},
      {"stable-lt", stable_lt},
      {"linnik-lt", linnik_lt},
      {"ml-lt", ml_lt},
      {"gml-lt", gml_lt},
      {"lamperti-lt", lamperti_lt},
      {"mixture-lt", mixture_lt},
      {"convolution-forms", convolution_forms},
      {"gml-reduction", gml_reduction},
      {"lamperti-normalization", lamperti_normalization},
      {"chain-normalization", chain_normalization},
      {"chain-joint", joint_consistency_check},
  };
  return checks;
}

TestReport chain_marginal_check(std::uint64_t seed, std::size_t n, double floor_p) {
  const double a = 0.6, theta = 0.3;
  const int k = 2;
  const std::size_t m = std::min<std::size_t>(n, 20000);
  const TransitionKernel kernel(a, kCfg);
  const RngState root = RngState(seed).split(1000);
  RngState chain_rng = root.split(0), direct_rng = root.split(1);
  std::vector<double> lhs(m), rhs(m);
  for (auto& x : lhs) {
    const double start = sample_ml(MLParams(a, theta), chain_rng, kCfg);
    x = simulate_chain(kernel, start, k, chain_rng).back();
  }
  for (auto& x : rhs) x = sample_ml(MLParams(a, theta + k), direct_rng, kCfg);
  const KsResult r = ks_two_sample(lhs, rhs);
  return {"chain-marginal", r.statistic, r.p_value, m, r.p_value > floor_p};
}

std::vector<std::string> verify_names() {
  std::vector<std::string> names = identity_names();
  names.push_back("chain-marginal");
  for (const auto& c : analytic_checks()) names.push_back(c.name);
  return names;
}

std::vector<TestReport> run_verify(std::uint64_t seed, std::size_t n, double floor_p,
                                   const std::vector<std::string>& only) {
  if (n < 10000) throw ArgumentError("verify: n must be at least 10000");
  const auto names = verify_names();
  for (const auto& o : only)
    if (std::find(names.begin(), names.end(), o) == names.end())
      throw ArgumentError("verify: unknown check '" + o + "'");
  auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };

  VerifyOptions opt;
  for (const auto& name : identity_names())
    if (wanted(name)) opt.only.push_back(name);
  std::vector<TestReport> out;
  if (!opt.only.empty()) out = verify_identities(seed, n, floor_p, opt);
  if (wanted("chain-marginal")) out.push_back(chain_marginal_check(seed, n, floor_p));
  for (const auto& c : analytic_checks())
    if (wanted(c.name)) out.push_back(c.run());
  return out;
}

}  // namespace stablemix
