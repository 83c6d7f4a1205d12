#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stablemix/config.hpp"
#include "stablemix/mc.hpp"
#include "stablemix/quadrature.hpp"

namespace stablemix {

/// int_0^inf e^{-x t} f(t) dt, integrated in s = log t over [s_lo, log(800/x)].
/// s_lo must sit where e^s f(e^s) is negligible.
template <class F>
double numeric_laplace(F&& f, double x, double s_lo, const QuadOptions& opt) {
  const double s_hi = std::log(800.0 / x);
  auto g = [&](double s) {
    const double t = std::exp(s);
    const double v = t * f(t);
    return std::isfinite(v) ? std::exp(-x * t) * v : 0.0;
  };
  std::vector<double> pts;
  for (double s = s_lo; s < s_hi; s += 4.0) pts.push_back(s);
  pts.push_back(s_hi);
  return integrate(g, std::span<const double>(pts), opt).value;
}

/// Deterministic checks of closed forms, transforms, reductions and
/// normalisations.  statistic is the largest deviation found, p_value is 1
/// when it is within tolerance and 0 otherwise, n counts the points checked.
struct AnalyticCheck {
  std::string name;
  std::function<TestReport()> run;
};

const std::vector<AnalyticCheck>& analytic_checks();

/// Statistical checks of the chain: KS of the step-2 marginal against
/// direct ML(alpha, theta + 2) draws, with min(n, 20000) trajectories.
TestReport chain_marginal_check(std::uint64_t seed, std::size_t n, double floor_p);

/// Names accepted by run_verify, in report order.
std::vector<std::string> verify_names();

/// Identities, chain check and analytic checks, filtered by `only` (empty runs all).
std::vector<TestReport> run_verify(std::uint64_t seed, std::size_t n, double floor_p,
                                   const std::vector<std::string>& only);

}  // namespace stablemix
