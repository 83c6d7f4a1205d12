#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablemix/errors.hpp"

namespace stablemix {

/// Density values on an increasing grid with a piecewise-cubic CDF.
///
/// The cumulative integral uses Simpson's rule with the interval midpoints;
/// within an interval the CDF is the cubic Hermite interpolant whose slopes
/// are the density values at the nodes.  Used for inverse-CDF sampling and
/// for CSV output.
class DensityTable {
 public:
  DensityTable(std::vector<double> x, std::vector<double> f, std::vector<double> f_mid);

  /// Tabulates `f` at the nodes and the interval midpoints.
  template <class F>
  static DensityTable tabulate(F&& f, std::vector<double> x) {
    std::vector<double> fx(x.size()), fm(x.size() > 0 ? x.size() - 1 : 0);
    for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) fm[i] = f(0.5 * (x[i] + x[i + 1]));
    return DensityTable(std::move(x), std::move(fx), std::move(fm));
  }

  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& values() const { return f_; }
  /// Integral of the density over the grid, before normalisation.
  double total() const { return cum_.back(); }
  /// Normalised CDF; 0 below the grid and 1 above it.
  double cdf(double x) const;
  /// Inverse of cdf for p in [0, 1].
  double quantile(double p) const;

 private:
  double hermite(std::size_t j, double s) const;

  std::vector<double> x_, f_, cum_;
};

/// Table of a density `g` on the real line, over a range grown from
/// `y_center` in unit steps until g falls below `rel_cut` times its maximum
/// on both sides, then refined to spacing `h`.  Throws TabulationError when a
/// side does not decay within [-700, 700].
template <class G>
DensityTable line_density_table(G&& g_raw, double y_center, double h = 0.02, double rel_cut = 1e-13) {
  auto g = [&](double y) {
    const double v = g_raw(y);
    return std::isfinite(v) ? v : 0.0;
  };
  double peak = g(y_center);
  auto extend = [&](double step) {
    double y = y_center;
    for (;;) {
      y += step;
      if (std::abs(y) > 700.0) throw TabulationError("density table: density does not decay within range");
      const double v = g(y);
      peak = std::max(peak, v);
      if (v <= rel_cut * peak) return y;
    }
  };
  const double hi = extend(1.0);
  const double lo = extend(-1.0);
  if (!(peak > 0.0)) throw TabulationError("density table: density vanishes on the scanned range");
  const int n = static_cast<int>(std::ceil((hi - lo) / h));
  std::vector<double> ys(n + 1);
  for (int i = 0; i <= n; ++i) ys[i] = lo + (hi - lo) * i / n;
  return DensityTable::tabulate(g, std::move(ys));
}

/// Table of the density of y = log v for a density `f` in v.
template <class F>
DensityTable log_density_table(F&& f, double y_center, double h = 0.02, double rel_cut = 1e-13) {
  return line_density_table([&](double y) { return std::exp(y) * f(std::exp(y)); }, y_center, h, rel_cut);
}

}  // namespace stablemix
