#pragma once

#include <unordered_map>
#include <variant>
#include <vector>

#include "stablemix/config.hpp"
#include "stablemix/mlfam.hpp"

namespace stablemix {

struct PointMass {
  double c = 1.0;
};

/// Gamma(shape, rate) mixing; the mixture is the positive Linnik law.
struct GammaMixing {
  double shape = 1.0;
  double rate = 1.0;
};

/// Moments mu_0 = 1, mu_1, ... of an otherwise unspecified mixing law.
struct MomentSequence {
  std::vector<double> moments;
};

using Mixing = std::variant<PointMass, GammaMixing, MLParams, GMLParams, MomentSequence>;

/// Law of T = S_{sigma;z} U^{1/sigma} with U ~ mixing, i.e. h(t) = int f_sigma(t|z u) dF(u).
class MixtureSpec {
 public:
  MixtureSpec(double sigma, double z, Mixing mixing);

  double sigma() const { return sigma_; }
  double z() const { return z_; }
  const Mixing& mixing() const { return mixing_; }

  /// log E[U^k]; throws NonConvergenceError past the end of a MomentSequence.
  double log_moment(int k) const;

 private:
  double sigma_, z_;
  Mixing mixing_;
};

/// Quadrature evaluator of h over u = e^s.  The mixing density is memoized
/// at the quadrature nodes, which recur across t because the initial panels
/// sit on a fixed integer grid in s.  Not safe for concurrent use.
class MixtureQuadrature {
 public:
  explicit MixtureQuadrature(MixtureSpec spec, NumericConfig cfg = {});

  double operator()(double t) const;
  const MixtureSpec& spec() const { return spec_; }

 private:
  double log_weight(double s) const;  // log(u p(u)) at u = e^s

  MixtureSpec spec_;
  NumericConfig cfg_;
  double s_mid_ = 0.0, s_hi_ = 0.0;
  mutable std::unordered_map<double, double> cache_;
};

/// h(t) by quadrature.  PointMass returns f_sigma(t | z c) and Gamma mixing
/// delegates to linnik_density; MomentSequence throws UnsupportedMixing.
double mixture_density_quadrature(const MixtureSpec& m, double t, const NumericConfig& cfg = {});

/// h(t) from the moment series
///   (1/(pi t)) sum_k (-1)^{k+1} sin(pi sigma k) Gamma(sigma k + 1)/k! (z t^{-sigma})^k mu_k,
/// accepted under the same rule as stable_density_series.
double mixture_density_series(const MixtureSpec& m, double t, const NumericConfig& cfg = {});

/// Lamperti density (sin pi a / pi) z t^{a-1} / (z^2 + 2 z t^a cos pi a + t^{2a}).
double lamperti_density(double alpha, double z, double t);

/// Density of T/(1+T) on (0, 1) for T Lamperti.
double lamperti_unit_density(double alpha, double z, double u);

/// (sin pi a / (pi a)) / (z^2 + 2 z cos pi a + 1), a density in z.
double lamperti_ratio_density(double alpha, double z);

/// (1/pi) Im t^{a gamma + theta - 1} / (z e^{-i pi a} + t^a)^{gamma + theta/a}
/// for GML mixing with beta + theta = 1 and sigma = alpha.
double lamperti_general_density(const GMLParams& p, double z, double t);

}  // namespace stablemix
