#pragma once

// Adaptive Gauss-Kronrod (7/15 and 10/21) integration. Every integral in
// the library goes through `integrate`; endpoint singularities are removed
// by the callers with power substitutions so one engine suffices.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "stablemix/errors.hpp"

namespace stablemix {

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 2000;
  /// Throw QuadratureError instead of returning an unconverged estimate.
  bool throw_on_failure = true;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

// Kronrod 21-point abscissae (positive half, descending) and weights, with
// the embedded 10-point Gauss weights on the odd Kronrod nodes.
inline constexpr std::array<double, 11> kXgk21 = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk21 = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478776, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg10 = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk21[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk21[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double s = f1[j] + f2[j];
    resk += kWgk21[j] * s;
    resabs += kWgk21[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg10[j / 2] * s;
  }
  const double mean = resk * 0.5;
  double resasc = kWgk21[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk21[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive integration over [points.front(), points.back()] with
/// the interior points used as initial breakpoints.
template <class F>
QuadResult integrate(F&& f, std::span<const double> points, const QuadOptions& opt = {}) {
  if (points.size() < 2) throw ArgumentError("integrate: need at least two points");
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, error = 0.0;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) {
      if (points[i] == points[i + 1]) continue;
      throw ArgumentError("integrate: breakpoints must be increasing");
    }
    auto p = detail::gk21(f, points[i], points[i + 1]);
    evals += 21;
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  int subdivisions = static_cast<int>(heap.size());
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (error > tolerance() && subdivisions < opt.max_subdivisions && !heap.empty()) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    evals += 42;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-accumulate to drop drift from the running updates.
  total = 0.0;
  error = 0.0;
  auto heap_copy = heap;
  while (!heap_copy.empty()) {
    total += heap_copy.top().value;
    error += heap_copy.top().error;
    heap_copy.pop();
  }
  QuadResult r{total, error, evals, error <= tolerance()};
  if (!r.converged && opt.throw_on_failure)
    throw QuadratureError("adaptive quadrature did not converge: estimate " + std::to_string(total) +
                          ", error " + std::to_string(error));
  return r;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  const double pts[2] = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(pts, 2), opt);
}

template <class F>
QuadResult integrate(F&& f, std::initializer_list<double> points, const QuadOptions& opt = {}) {
  return integrate(std::forward<F>(f), std::span<const double>(points.begin(), points.size()), opt);
}

/// Integral over [a, inf) through x = a + (1 - s) / s, s in (0, 1].
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}) {
  auto mapped = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double x = a + (1.0 - s) / s;
    const double v = f(x) / (s * s);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace stablemix
