#include "stablemix/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "stablemix/chain.hpp"
#include "stablemix/checks.hpp"
#include "stablemix/errors.hpp"
#include "stablemix/mc.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

namespace stablemix::cli {

std::vector<double> Grid::nodes() const {
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) {
    const double f = i / (points - 1.0);
    x[i] = log_spacing ? min * std::pow(max / min, f) : min + (max - min) * f;
  }
  x.back() = max;
  return x;
}

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw ArgumentError("grid must be min:max:points:lin|log, got '" + text + "'");
  Grid g;
  try {
    std::size_t used = 0;
    g.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("min");
    g.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("max");
    g.points = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("points");
  } catch (const std::logic_error&) {
    throw ArgumentError("grid: cannot parse '" + text + "'");
  }
  if (parts[3] == "log") g.log_spacing = true;
  else if (parts[3] != "lin") throw ArgumentError("grid spacing must be lin or log");
  if (!(g.min < g.max)) throw ArgumentError("grid: min must be below max");
  if (g.points < 2) throw ArgumentError("grid: need at least 2 points");
  if (g.log_spacing && !(g.min > 0.0)) throw ArgumentError("grid: log spacing needs min > 0");
  return g;
}

namespace {

Mixing make_mixing(const LawArgs& a) {
  if (a.mixing == "point") return PointMass{a.c};
  if (a.mixing == "gamma") return GammaMixing{a.gamma, a.lambda};
  if (a.mixing == "ml") return MLParams(a.alpha, a.theta);
  if (a.mixing == "gml") return GMLParams(a.alpha, a.theta, a.beta, a.gamma);
  throw ArgumentError("unknown mixing '" + a.mixing + "' (point, gamma, ml, gml)");
}

}  // namespace

std::function<double(double)> make_density(const LawArgs& a, const NumericConfig& cfg) {
  const std::string& law = a.law;
  if (law == "stable") {
    const StableParams p(a.alpha, a.z);
    return [p, cfg](double t) { return stable_density(p, t, cfg); };
  }
  if (law == "linnik") {
    const LinnikParams p(a.alpha, a.gamma, a.lambda, a.z);
    return [p, cfg](double t) { return linnik_density(p, t, cfg); };
  }
  if (law == "ml") {
    const MLParams p(a.alpha, a.theta);
    return [p, cfg](double t) { return ml2_density(p, t, cfg); };
  }
  if (law == "gml") {
    const GMLParams p(a.alpha, a.theta, a.beta, a.gamma);
    return [p, cfg](double t) { return gml_density(p, t, cfg); };
  }
  if (law == "lamperti") {
    lamperti_density(a.alpha, a.z, 1.0);  // validates
    return [a](double t) { return lamperti_density(a.alpha, a.z, t); };
  }
  if (law == "lamperti-unit") {
    lamperti_unit_density(a.alpha, a.z, 0.5);
    return [a](double u) { return lamperti_unit_density(a.alpha, a.z, u); };
  }
  if (law == "lamperti-ratio") {
    lamperti_ratio_density(a.alpha, 1.0);
    return [a](double z) { return lamperti_ratio_density(a.alpha, z); };
  }
  if (law == "lamperti-general") {
    const GMLParams p(a.alpha, a.theta, a.beta, a.gamma);
    lamperti_general_density(p, a.z, 1.0);  // validates the parameter relation
    return [p, z = a.z](double t) { return lamperti_general_density(p, z, t); };
  }
  if (law == "mixture") {
    auto h = std::make_shared<MixtureQuadrature>(MixtureSpec(a.sigma, a.z, make_mixing(a)), cfg);
    return [h](double t) { return (*h)(t); };
  }
  if (law == "thorin") {
    thorin_density(a.alpha, a.gamma, 1.0);
    return [a](double t) { return thorin_density(a.alpha, a.gamma, t); };
  }
  if (law == "transition") {
    auto k = std::make_shared<TransitionKernel>(a.alpha, cfg);
    if (!(a.t0 > 0.0)) throw DomainError("transition: t0 must be > 0");
    return [k, t0 = a.t0](double u) { return k->density(t0, u); };
  }
  throw ArgumentError("unknown law '" + law + "'");
}

std::function<double(double)> make_laplace(const LawArgs& a) {
  const std::string& law = a.law;
  if (law == "stable") {
    const StableParams p(a.alpha, a.z);
    return [p](double x) { return std::exp(-p.z() * std::pow(x, p.alpha())); };
  }
  if (law == "linnik") {
    const LinnikParams p(a.alpha, a.gamma, a.lambda, a.z);
    return [p](double x) { return linnik_laplace(p, x); };
  }
  if (law == "ml") {
    const MLParams p(a.alpha, a.theta);
    return [p](double x) { return ml2_laplace(p, x); };
  }
  if (law == "gml") {
    const GMLParams p(a.alpha, a.theta, a.beta, a.gamma);
    return [p](double x) { return gml_laplace(p, x); };
  }
  // T = (z U)^{1/sigma} S_sigma has E e^{-x T} = E e^{-z x^sigma U}.
  if (law == "lamperti") {
    const MLParams p(a.alpha, 0.0);
    lamperti_density(a.alpha, a.z, 1.0);
    return [p, z = a.z](double x) { return ml2_laplace(p, z * std::pow(x, p.alpha())); };
  }
  if (law == "lamperti-general") {
    const GMLParams p(a.alpha, a.theta, a.beta, a.gamma);
    lamperti_general_density(p, a.z, 1.0);
    return [p, z = a.z](double x) { return gml_laplace(p, z * std::pow(x, p.alpha())); };
  }
  if (law == "mixture") {
    const MixtureSpec m(a.sigma, a.z, make_mixing(a));
    return [m](double x) {
      const double y = m.z() * std::pow(x, m.sigma());
      return std::visit(
          [y](const auto& mix) -> double {
            using T = std::decay_t<decltype(mix)>;
            if constexpr (std::is_same_v<T, PointMass>) return std::exp(-mix.c * y);
            else if constexpr (std::is_same_v<T, GammaMixing>) return std::pow(mix.rate / (mix.rate + y), mix.shape);
            else if constexpr (std::is_same_v<T, MLParams>) return ml2_laplace(mix, y);
            else if constexpr (std::is_same_v<T, GMLParams>) return gml_laplace(mix, y);
            else throw UnsupportedMixing("laplace: moment-sequence mixing");
          },
          m.mixing());
    };
  }
  throw ArgumentError("no closed-form Laplace transform for law '" + law + "'");
}

namespace {

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw ArgumentError("cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int write_table(const RunConfig& rc, const std::function<double(double)>& f, const char* header,
                std::ostream& out) {
  const Grid g = parse_grid(rc.grid);
  const auto xs = g.nodes();
  // Evaluate everything first so a failure leaves no partial file.
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  Output o(rc.out, out);
  *o << header << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) *o << g17(xs[i]) << ',' << g17(ys[i]) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const auto reports = run_verify(rc.seed, rc.n, rc.floor, rc.only);
  nlohmann::json j = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    j.push_back({{"name", r.name}, {"statistic", r.statistic}, {"p_value", r.p_value}, {"n", r.n}, {"pass", r.pass}});
    all = all && r.pass;
  }
  Output o(rc.out, out);
  *o << j.dump(2) << '\n';
  std::ostream& text = o.to_file() ? out : err;
  for (const auto& r : reports)
    text << (r.pass ? "PASS " : "FAIL ") << r.name << " statistic=" << g17(r.statistic) << " p=" << r.p_value
         << " n=" << r.n << '\n';
  return all ? 0 : 1;
}

int cmd_chain(const RunConfig& rc, std::ostream& out) {
  if (rc.steps < 0) throw ArgumentError("chain: steps must be >= 0");
  RngState rng(rc.seed);
  ChainState s{rc.law.alpha, rc.law.theta, 0, 1.0};
  s.validate();
  s.value = rc.start ? *rc.start : sample_ml(MLParams(s.alpha, s.theta), rng, rc.cfg);
  s.validate();
  const auto path = rc.steps == 0 ? std::vector<double>{s.value} : simulate_chain(s, rc.steps, rng, rc.cfg);
  Output o(rc.out, out);
  *o << "k,value\n";
  for (std::size_t k = 0; k < path.size(); ++k) *o << k << ',' << g17(path[k]) << '\n';
  return 0;
}

void add_law_options(CLI::App* app, LawArgs& a) {
  app->add_option("--law", a.law, "stable, linnik, ml, gml, lamperti, lamperti-unit, lamperti-ratio, "
                                  "lamperti-general, mixture, thorin, transition")
      ->required();
  app->add_option("--alpha", a.alpha, "stable index alpha");
  app->add_option("--z", a.z, "scale z");
  app->add_option("--theta", a.theta, "theta");
  app->add_option("--beta", a.beta, "beta");
  app->add_option("--gamma", a.gamma, "gamma (also the Linnik / gamma-mixing shape)");
  app->add_option("--lambda", a.lambda, "Linnik / gamma-mixing rate");
  app->add_option("--sigma", a.sigma, "mixture stable index");
  app->add_option("--mixing", a.mixing, "mixture mixing law: point, gamma, ml, gml");
  app->add_option("--c", a.c, "point-mass location");
  app->add_option("--t0", a.t0, "transition kernel start value");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  if (const char* env = std::getenv("STABLEMIX_SEED")) {
    try {
      rc.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "error: STABLEMIX_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  CLI::App app{"Stable, Mittag-Leffler and Lamperti laws: densities, transforms, sampling checks"};
  app.require_subcommand(1);
  app.add_option("--abs-tol", rc.cfg.abs_tol, "absolute quadrature tolerance");
  app.add_option("--rel-tol", rc.cfg.rel_tol, "relative quadrature / series tolerance");

  auto* density = app.add_subcommand("density", "tabulate a density to CSV (t,density)");
  add_law_options(density, rc.law);
  density->add_option("--grid", rc.grid, "min:max:points:lin|log")->required();
  density->add_option("--out", rc.out, "output file (default stdout)");

  auto* laplace = app.add_subcommand("laplace", "tabulate a closed-form Laplace transform to CSV (x,laplace)");
  add_law_options(laplace, rc.law);
  laplace->add_option("--grid", rc.grid, "min:max:points:lin|log")->required();
  laplace->add_option("--out", rc.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the identity and invariant checks, JSON report");
  verify->add_option("--seed", rc.seed, "RNG seed (default $STABLEMIX_SEED or 42)");
  verify->add_option("--n", rc.n, "sample size per KS test (>= 10000)");
  verify->add_option("--out", rc.out, "JSON output file (default stdout)");
  verify->add_option("--floor", rc.floor, "p-value floor for a pass");
  verify->add_option("--only", rc.only, "run only these checks")->delimiter(',');
  verify->add_flag_callback("--list", [&] {
    for (const auto& n : verify_names()) out << n << '\n';
    throw CLI::Success();
  }, "list check names");

  auto* chain = app.add_subcommand("chain", "simulate the Mittag-Leffler chain to CSV (k,value)");
  chain->add_option("--alpha", rc.law.alpha, "alpha");
  chain->add_option("--theta", rc.law.theta, "theta of the starting law");
  chain->add_option("--start", rc.start, "start value (default: a draw from ML(alpha, theta))");
  chain->add_option("--steps", rc.steps, "number of steps");
  chain->add_option("--seed", rc.seed, "RNG seed (default $STABLEMIX_SEED or 42)");
  chain->add_option("--out", rc.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    rc.cfg.validate();
    if (*density) return write_table(rc, make_density(rc.law, rc.cfg), "t,density", out);
    if (*laplace) return write_table(rc, make_laplace(rc.law), "x,laplace", out);
    if (*verify) return cmd_verify(rc, out, err);
    if (*chain) return cmd_chain(rc, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedMixing& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace stablemix::cli
