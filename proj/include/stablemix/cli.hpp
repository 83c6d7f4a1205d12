#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stablemix/config.hpp"

namespace stablemix::cli {

/// Evaluation grid "min:max:points:lin|log".
struct Grid {
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  bool log_spacing = false;

  std::vector<double> nodes() const;
};

/// Throws ArgumentError on malformed text, min >= max, points < 2, or a log grid with min <= 0.
Grid parse_grid(const std::string& text);

/// A law by name plus every parameter any law may use; each law reads its own.
///   stable            alpha z
///   linnik            alpha gamma (shape) lambda (rate) z
///   ml                alpha theta
///   gml               alpha theta beta gamma
///   lamperti          alpha z
///   lamperti-unit     alpha z          (density of T/(1+T) on (0, 1))
///   lamperti-ratio    alpha            (density in z)
///   lamperti-general  alpha theta beta gamma z
///   mixture           sigma z mixing=point(c)|gamma(gamma, lambda)|ml(alpha, theta)|gml(alpha, theta, beta, gamma)
///   thorin            alpha gamma
///   transition        alpha t0         (q(t | t0))
struct LawArgs {
  std::string law;
  double alpha = 0.5, z = 1.0, theta = 0.0, beta = 1.0, gamma = 1.0, lambda = 1.0;
  double sigma = 0.5, c = 1.0, t0 = 1.0;
  std::string mixing = "ml";
};

/// Density of the law as a function of t; parameters are validated here.
std::function<double(double)> make_density(const LawArgs& law, const NumericConfig& cfg);

/// Closed-form Laplace transform E e^{-x T}; ArgumentError for laws without one.
std::function<double(double)> make_laplace(const LawArgs& law);

/// Everything a subcommand needs.
struct RunConfig {
  std::string subcommand;
  LawArgs law;
  std::string grid;
  std::uint64_t seed = 42;
  std::size_t n = 100000;
  std::string out;  // empty: standard output
  double floor = 0.01;
  std::vector<std::string> only;
  int steps = 10;
  std::optional<double> start;
  NumericConfig cfg;
};

/// Parses and runs a command line.  Returns 0 on success, 1 on a numeric or
/// statistical failure, 2 on a usage error; messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stablemix::cli
