#include "stablemix/table.hpp"

#include <algorithm>
#include <cmath>

#include "stablemix/errors.hpp"

namespace stablemix {

DensityTable::DensityTable(std::vector<double> x, std::vector<double> f, std::vector<double> f_mid)
    : x_(std::move(x)), f_(std::move(f)) {
  if (x_.size() < 2 || f_.size() != x_.size() || f_mid.size() + 1 != x_.size())
    throw TabulationError("DensityTable: grid and values do not match");
  cum_.assign(x_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i] < x_[i + 1])) throw TabulationError("DensityTable: grid must be increasing");
    if (f_[i] < 0.0 || f_mid[i] < 0.0) throw TabulationError("DensityTable: negative density");
    cum_[i + 1] = cum_[i] + (x_[i + 1] - x_[i]) * (f_[i] + 4.0 * f_mid[i] + f_[i + 1]) / 6.0;
  }
  if (!(cum_.back() > 0.0) || !std::isfinite(cum_.back())) throw TabulationError("DensityTable: zero total mass");
}

double DensityTable::hermite(std::size_t j, double s) const {
  const double h = x_[j + 1] - x_[j];
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * cum_[j] + (s3 - 2 * s2 + s) * h * f_[j] + (-2 * s3 + 3 * s2) * cum_[j + 1] +
         (s3 - s2) * h * f_[j + 1];
}

double DensityTable::cdf(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const std::size_t j = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
  const double s = (x - x_[j]) / (x_[j + 1] - x_[j]);
  return std::clamp(hermite(j, s) / total(), 0.0, 1.0);
}

double DensityTable::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("DensityTable::quantile: p must be in [0, 1]");
  const double target = p * total();
  std::size_t j = std::upper_bound(cum_.begin(), cum_.end(), target) - cum_.begin();
  if (j == 0) return x_.front();
  if (j >= cum_.size()) return x_.back();
  --j;
  // Safeguarded Newton on the cubic; the bracket [0, 1] always holds a root.
  const double h = x_[j + 1] - x_[j];
  double lo = 0.0, hi = 1.0;
  double s = cum_[j + 1] > cum_[j] ? (target - cum_[j]) / (cum_[j + 1] - cum_[j]) : 0.5;
  for (int it = 0; it < 60; ++it) {
    const double r = hermite(j, s) - target;
    if (r > 0.0) hi = s; else lo = s;
    const double s2 = s * s;
    const double slope = (6 * s2 - 6 * s) * cum_[j] + (3 * s2 - 4 * s + 1) * h * f_[j] +
                         (-6 * s2 + 6 * s) * cum_[j + 1] + (3 * s2 - 2 * s) * h * f_[j + 1];
    double next = slope > 0.0 ? s - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) < 1e-15) { s = next; break; }
    s = next;
  }
  return x_[j] + s * h;
}

}  // namespace stablemix
