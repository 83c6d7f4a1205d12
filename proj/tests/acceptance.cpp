// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "stablemix/chain.hpp"
#include "stablemix/checks.hpp"
#include "stablemix/cli.hpp"
#include "stablemix/convolve.hpp"
#include "stablemix/mc.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

using namespace stablemix;

namespace {

constexpr double kPi = std::numbers::pi;
const NumericConfig kCfg{1e-12, 1e-10};
const QuadOptions kQuad{1e-12, 1e-10};

struct Line {
  bool ok = true;
  std::string detail;

  // records a deviation against its tolerance
  void dev(const std::string& what, double d, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.2e (tol %.0e)", detail.empty() ? "" : "; ", what.c_str(), d, tol);
    detail += buf;
    ok = ok && d <= tol;
  }
};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return g;
}

// max over x in {0.5, 1, 2} of |numeric LT - closed form|
double lt_dev(const std::function<double(double)>& f, const std::function<double(double)>& closed, double s_lo) {
  double d = 0.0;
  for (double x : {0.5, 1.0, 2.0}) d = std::max(d, std::abs(numeric_laplace(f, x, s_lo, kQuad) - closed(x)));
  return d;
}

// mass on (0, inf) in s = log t over [s_lo, s_hi]
double log_mass(const std::function<double(double)>& f, double s_lo, double s_hi) {
  std::vector<double> pts;
  for (double s = s_lo; s < s_hi; s += 8.0) pts.push_back(s);
  pts.push_back(s_hi);
  return integrate([&](double s) { return std::exp(s) * f(std::exp(s)); }, std::span<const double>(pts),
                   {1e-14, 1e-12})
      .value;
}

Line alpha_half() {
  Line l;
  double d = 0.0;
  for (double z : {0.5, 1.0, 2.0})
    for (double t : log_grid(0.05, 50.0, 200)) {
      const double exact = z / (2.0 * std::sqrt(kPi)) * std::pow(t, -1.5) * std::exp(-z * z / (4.0 * t));
      d = std::max(d, std::abs(stable_density(StableParams(0.5, z), t) - exact));
    }
  l.dev("stable", d, 1e-8);
  d = 0.0;
  for (double t : log_grid(0.05, 50.0, 200))
    d = std::max(d, std::abs(ml2_density(MLParams(0.5, 0.0), t) - std::exp(-t * t / 4.0) / std::sqrt(kPi)));
  l.dev("ML(1/2)", d, 1e-8);
  return l;
}

Line laplace_suite() {
  Line l;
  double d = 0.0;
  for (double a : {0.3, 0.5, 0.7, 0.9})
    for (double z : {0.5, 1.0, 2.0}) {
      const StableParams p(a, z);
      d = std::max(d, lt_dev([&](double t) { return stable_density(p, t, kCfg); },
                             [&](double x) { return std::exp(-z * std::pow(x, a)); }, -30.0));
    }
  l.dev("stable", d, 1e-5);

  d = 0.0;
  for (const auto& p : {LinnikParams(0.5, 1.5, 2.0, 1.0), LinnikParams(0.7, 1.0, 1.0, 1.0),
                        LinnikParams(0.4, 2.0, 1.0, 0.5)})
    d = std::max(d, lt_dev([&](double t) { return linnik_density(p, t, kCfg); },
                           [&](double x) { return std::pow(p.rate() / (p.rate() + p.z() * std::pow(x, p.alpha())),
                                                           p.shape()); },
                           -70.0));
  l.dev("Linnik", d, 1e-5);

  d = 0.0;
  for (const auto& p : {MLParams(0.5, 0.0), MLParams(0.5, 0.5), MLParams(0.7, -0.2)}) {
    const double a = p.alpha(), th = p.theta();
    d = std::max(d, lt_dev([&](double t) { return ml2_density(p, t, kCfg); },
                           [&](double x) {
                             return gamma_fn(1.0 + th) * prabhakar_ml(PrabhakarParams(a, 1.0 + th, 1.0 + th / a), x);
                           },
                           -30.0));
  }
  l.dev("ML", d, 1e-5);

  auto gml_closed = [](const GMLParams& p, double y) {
    return gamma_fn(p.beta() + p.theta()) *
           prabhakar_ml(PrabhakarParams(p.alpha(), p.beta() + p.theta(), p.gamma() + p.theta() / p.alpha()), y);
  };
  d = 0.0;
  for (const auto& p : {GMLParams(0.6, 0.1, 1.2, 1.5), GMLParams(0.5, 0.25, 0.75, 1.0)})
    d = std::max(d, lt_dev([&](double t) { return gml_density(p, t, kCfg); },
                           [&](double x) { return gml_closed(p, x); }, -40.0));
  l.dev("GML", d, 1e-5);

  d = 0.0;
  for (double sigma : {0.6, 0.8}) {
    const GMLParams p(0.6, 0.1, 1.2, 1.5);
    const double z = 0.8;
    const MixtureQuadrature h(MixtureSpec(sigma, z, p), NumericConfig{1e-12, 1e-8});
    d = std::max(d, lt_dev([&](double t) { return h(t); },
                           [&](double x) { return gml_closed(p, z * std::pow(x, sigma)); }, -40.0));
  }
  l.dev("mixture", d, 1e-5);
  return l;
}

Line convolution_suite() {
  Line l;
  double d = 0.0;
  for (double a : {0.4, 0.5, 0.7})
    for (double nu : {0.3, 1.0 - a, 1.2})
      for (double z : {1.0, 2.0})
        for (double t : {0.5, 1.0, 3.0}) {
          const PowerKernel k(nu);
          const StableParams p(a, z);
          d = std::max(d, std::abs(gamma_stable_conv_direct(k, p, t) - gamma_stable_conv_beta(k, p, t)));
        }
  l.dev("direct vs beta", d, 1e-6);

  d = 0.0;
  for (double a : {0.3, 0.5, 0.7})
    for (double z : {1.0, 2.0})
      for (double u : {0.5, 1.0, 2.0}) {
        const StableParams p(a, z);
        d = std::max(d, std::abs(gamma_stable_conv_direct(PowerKernel(1.0 - a), p, u) -
                                 u * stable_density(p, u) / (z * a)));
      }
  l.dev("rho_{1-a} identity", d, 1e-6);

  d = 0.0;
  for (double a : {0.4, 0.6, 0.8})
    for (double x : {0.5, 1.0, 2.5}) {
      const auto [lhs, rhs] = gamma_linnik_conv_check(a, 1.5, 2.0, std::max(1.3, 1.5 * a), x);
      d = std::max(d, std::abs(lhs - rhs));
    }
  l.dev("gamma-Linnik lemma", d, 1e-5);
  return l;
}

Line reductions() {
  Line l;
  double d1 = 0.0, d2 = 0.0;
  for (double t : log_grid(0.05, 5.0, 50)) {
    d1 = std::max(d1, std::abs(gml_density(GMLParams(0.6, 0.2, 1.0, 1.0), t) - ml2_density(MLParams(0.6, 0.2), t)));
    d2 = std::max(d2, std::abs(gml_density(GMLParams(0.6, 0.2, 0.9, 1.5), t) - ml2_density(MLParams(0.6, 1.1), t)));
  }
  l.dev("(1,1)", d1, 1e-8);
  l.dev("(beta,beta/alpha)", d2, 1e-8);
  double d3 = 0.0;
  // a gamma + theta = a, with beta + theta = 1 as the family requires
  for (const auto& p : {GMLParams(0.5, 0.0, 1.0, 1.0), GMLParams(0.6, 0.3, 0.7, 0.5)})
    for (double z : {0.5, 1.3})
      for (double t : log_grid(0.01, 100.0, 50))
        d3 = std::max(d3, std::abs(lamperti_general_density(p, z, t) - lamperti_density(p.alpha(), z, t)));
  l.dev("Lamperti-general", d3, 1e-10);
  return l;
}

Line lamperti_suite() {
  Line l;
  double d = 0.0;
  for (double a : {0.3, 0.5, 0.8})
    for (double z : {0.5, 1.0, 2.0}) {
      // tails in s = log t decay like e^{-a |s|}
      d = std::max(d, std::abs(log_mass([&](double t) { return lamperti_density(a, z, t); }, -160.0, 160.0) - 1.0));
      // unit form in the logit variable up to 1 - 1e-6, then the exact tail of T = u / (1 - u)
      const double delta = 1e-6, y_hi = std::log((1.0 - delta) / delta);
      const double body = integrate(
          [&](double y) {
            const double u = 1.0 / (1.0 + std::exp(-y));
            return lamperti_unit_density(a, z, u) * u * (1.0 - u);
          },
          {-200.0, -20.0, 0.0, y_hi}, {1e-14, 1e-12}).value;
      const double x = std::pow((1.0 - delta) / delta, a) / z;
      d = std::max(d, std::abs(body + std::atan(std::sin(kPi * a) / (x + std::cos(kPi * a))) / (kPi * a) - 1.0));
    }
  for (double a : {0.3, 0.5, 0.8})
    d = std::max(d, std::abs(log_mass([&](double v) { return lamperti_ratio_density(a, v); }, -160.0, 160.0) - 1.0));
  l.dev("normalization", d, 1e-8);

  d = 0.0;
  for (double a : {0.4, 0.6}) {
    const MixtureSpec m(a, 0.1, MLParams(a, 0.0));
    for (double t : {0.2, 1.0, 5.0}) {
      const double closed = lamperti_density(a, 0.1, t);
      d = std::max(d, std::abs(mixture_density_quadrature(m, t) - closed));
      d = std::max(d, std::abs(mixture_density_series(m, t) - closed));
    }
  }
  l.dev("closed/quadrature/series", d, 1e-6);
  return l;
}

// worst |sample mean - expectation| in standard errors
double z_score(const std::vector<double>& xs, int power, double expect) {
  double s = 0.0, s2 = 0.0;
  for (double x : xs) {
    const double y = power == 1 ? x : x * x;
    s += y;
    s2 += y * y;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  return std::abs(mean - expect) / std::sqrt((s2 / n - mean * mean) / n);
}

Line moments() {
  struct Set {
    std::function<double(RngState&)> draw;
    double m1, m2;
  };
  // gamma-ratio moments evaluated in mpmath
  const std::vector<Set> sets{
      {[](RngState& r) { return sample_ml(MLParams(0.5, 0.0), r); }, 1.1283791670955126, 2.0},
      {[](RngState& r) { return sample_ml(MLParams(0.5, 0.5), r); }, 1.772453850905516, 4.0},
      {[](RngState& r) { return sample_ml(MLParams(0.7, 1.3), r); }, 1.6667312931402292, 3.0828853787740914},
      {[](RngState& r) { return sample_ml(MLParams(0.3, -0.2), r); }, 0.40792164523719575, 0.58318103152060899},
      {[](RngState& r) { return sample_gml(GMLParams(0.5, 0.25, 0.75, 1.0), r); }, 1.6925687506432689, 3.75},
      {[](RngState& r) { return sample_gml(GMLParams(0.6, 0.1, 1.2, 1.5), r); }, 1.5552481115671729,
       3.0005547756761682}};
  Line l;
  double worst = 0.0;
  RngState root(2024);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    RngState rng = root.split(i);
    std::vector<double> xs(1000000);
    for (auto& x : xs) x = sets[i].draw(rng);
    worst = std::max({worst, z_score(xs, 1, sets[i].m1), z_score(xs, 2, sets[i].m2)});
  }
  l.dev("worst z over 6 sets", worst, 3.0);
  return l;
}

// P(U <= t + d_max | t) with the kernel's leading term below d0 = 1e-9 t
double kernel_mass(double a, double t) {
  const double k = 1.0 / a - 1.0, d0 = 1e-9 * t;
  const double head = a * t * std::pow(d0, k) / (k * gamma_fn(k));
  const double tail = integrate_to_infinity(
      [&](double w) {
        const double d = std::pow(k * w, 1.0 / k);
        return transition_density(a, t, t + d, kCfg) * d / (k * w);
      },
      std::pow(d0, k) / k, {1e-13, 1e-11}).value;
  return head + tail;
}

Line markov_chain() {
  Line l;
  double d = 0.0;
  for (double a : {0.4, 0.5, 0.7})
    for (double t : {0.5, 1.0, 2.0}) d = std::max(d, std::abs(kernel_mass(a, t) - 1.0));
  l.dev("normalization", d, 1e-6);

  d = 0.0;
  for (auto [a, th, k, t, u] : {std::tuple{0.5, 0.0, 0, 1.0, 2.0}, std::tuple{0.7, 0.2, 1, 0.5, 1.5},
                                std::tuple{0.4, -0.2, 2, 0.3, 1.0}, std::tuple{0.6, -0.2, 2, 1.2, 1.9}}) {
    const auto [lhs, rhs] = joint_consistency(a, th, k, t, u);
    d = std::max(d, std::abs(lhs - rhs));
  }
  l.dev("joint consistency", d, 1e-6);

  // alpha = 1/2 median from t = 1 is sqrt(1 + 4 ln 2)
  RngState rng(7);
  std::vector<double> ends(100000);
  for (auto& e : ends) e = simulate_chain(ChainState{0.5, 0.0, 0, 1.0}, 1, rng).back();
  std::nth_element(ends.begin(), ends.begin() + ends.size() / 2, ends.end());
  l.dev("median", std::abs(ends[ends.size() / 2] - std::sqrt(1.0 + 4.0 * std::log(2.0))), 1e-2);

  const double a = 0.7, th = 0.3;
  const int n = 100000;
  const TransitionKernel kernel(a);
  std::vector<std::vector<double>> steps(3, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const auto path = simulate_chain(kernel, sample_ml(MLParams(a, th), rng), 3, rng);
    for (int k = 0; k < 3; ++k) steps[k][i] = path[k + 1];
  }
  double p_min = 1.0;
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> direct(n);
    for (auto& x : direct) x = sample_ml(MLParams(a, th + k), rng);
    p_min = std::min(p_min, ks_two_sample(steps[k - 1], direct).p_value);
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "; step 1..3 marginal KS min p %.3f (floor 0.01)", p_min);
  l.detail += buf;
  l.ok = l.ok && p_min > 0.01;
  return l;
}

Line identity_sweep() {
  const auto& names = identity_names();
  std::vector<int> passes(names.size(), 0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto reports = verify_identities(seed, 100000, 0.01);
    for (std::size_t i = 0; i < reports.size(); ++i) passes[i] += reports[i].pass;
  }
  Line l;
  for (std::size_t i = 0; i < names.size(); ++i) {
    l.detail += (i ? ", " : "") + names[i] + " " + std::to_string(passes[i]) + "/100";
    l.ok = l.ok && passes[i] >= 95;
  }
  l.detail += " (need >= 95)";
  return l;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Line determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "stablemix_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::vector<std::string>>> cmds{
      {"density.csv", {"density", "--law", "gml", "--alpha", "0.6", "--theta", "0.1", "--beta", "1.2", "--gamma", "1.5",
                       "--grid", "0.1:5:20:log"}},
      {"chain.csv", {"chain", "--alpha", "0.7", "--theta", "0.3", "--steps", "50", "--seed", "12"}},
      {"verify.json", {"verify", "--n", "10000", "--seed", "12"}}};
  Line l;
  int same = 0;
  for (const auto& [file, args] : cmds) {
    std::string out[2];
    for (int r = 0; r < 2; ++r) {
      const auto path = (dir / (std::to_string(r) + file)).string();
      std::vector<std::string> a{"stablemix"};
      a.insert(a.end(), args.begin(), args.end());
      a.insert(a.end(), {"--out", path});
      std::vector<const char*> argv;
      for (const auto& s : a) argv.push_back(s.c_str());
      std::ostringstream o, e;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
      out[r] = code == 0 ? slurp(path) : "exit " + std::to_string(code);
    }
    const bool ok = !out[0].empty() && out[0].rfind("exit ", 0) != 0 && out[0] == out[1];
    same += ok;
    l.ok = l.ok && ok;
  }
  std::filesystem::remove_all(dir);
  l.detail = std::to_string(same) + "/" + std::to_string(cmds.size()) + " outputs byte-identical";
  return l;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Line()>>> criteria{
      {"alpha = 1/2 closed forms", alpha_half},
      {"Laplace transforms", laplace_suite},
      {"gamma-stable convolution", convolution_suite},
      {"reduction lattice", reductions},
      {"Lamperti closed forms", lamperti_suite},
      {"Monte Carlo moments", moments},
      {"Markov chain", markov_chain},
      {"equalities in distribution, 100 seeds", identity_sweep},
      {"determinism", determinism}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Line l;
    try {
      l = run();
    } catch (const std::exception& e) {
      l = {false, std::string("threw: ") + e.what()};
    }
    failed += !l.ok;
    std::printf("%s %s: %s\n", l.ok ? "PASS" : "FAIL", name, l.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
