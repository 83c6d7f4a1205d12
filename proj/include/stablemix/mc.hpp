#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stablemix/config.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/rng.hpp"
#include "stablemix/table.hpp"

namespace stablemix {

/// Gamma(shape, rate) by Marsaglia-Tsang; shape < 1 is boosted via G_{shape+1} U^{1/shape}.
double sample_gamma(double shape, double rate, RngState& rng);

/// Beta(a, b) as G_a / (G_a + G_b).
double sample_beta(double a, double b, RngState& rng);

/// ML(alpha, theta).  theta = 0 draws S^{-alpha} exactly; otherwise inverse-CDF
/// sampling from a table of ml2_density in log t, built once per (alpha, theta).
double sample_ml(const MLParams& p, RngState& rng, const NumericConfig& cfg = {});

/// ML(alpha, theta | beta, gamma) as M_{alpha, beta+theta} B(theta/alpha + gamma, beta/alpha - gamma);
/// on the boundary beta = alpha gamma the beta factor is 1.
double sample_gml(const GMLParams& p, RngState& rng, const NumericConfig& cfg = {});

/// T = (z U)^{1/sigma} S_sigma with U drawn from the mixing law.
/// MomentSequence mixing throws UnsupportedMixing.
double sample_mixture(const MixtureSpec& m, RngState& rng, const NumericConfig& cfg = {});

/// Draw from a tabulated density by inversion.
inline double sample_table(const DensityTable& t, RngState& rng) { return t.quantile(rng.uniform()); }

struct KsResult {
  double statistic;
  double p_value;
};

/// Kolmogorov survival function Q(x) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 x^2}.
double kolmogorov_q(double x);

/// One-sample KS against a continuous CDF.  The p-value is Q((sqrt(n) + 0.12 + 0.11/sqrt(n)) D)
/// (Stephens' finite-n correction).  The sample is sorted in place.
KsResult ks_one_sample(std::vector<double>& sample, const std::function<double(double)>& cdf);

/// Two-sample KS, same correction with n replaced by n m / (n + m).  Both samples are sorted in place.
KsResult ks_two_sample(std::vector<double>& a, std::vector<double>& b);

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t n = 0;
  bool pass = false;
};

/// Parameters of the identity suite.
struct VerifyOptions {
  double alpha = 0.5;
  double z = 1.0;
  double theta = 0.0;
  GMLParams gml{0.5, 0.25, 0.75, 1.0};
  /// Names of the identities to run; empty runs all of them.
  std::vector<std::string> only;
  NumericConfig cfg{1e-12, 1e-10};
};

/// Names of the identities checked by verify_identities, in report order.
const std::vector<std::string>& identity_names();

/// Two-sample KS checks of the equalities in distribution
///   ratio-of-stables  S_{a;z}/S'_{a;1} vs the Lamperti mixture sampler
///   unit-lamperti     X/(1+X) vs inversion of lamperti_unit_density
///   power-lamperti    X^a (z = 1) vs inversion of lamperti_ratio_density
///   ml-beta-product   M_{a,theta+1} B(theta/a + 1, 1/a - 1) vs M_{a,theta}
///   gml-beta-product  the product sampler vs inversion of gml_density
/// each on its own stream RngState(seed).split(i).  Throws ArgumentError for n < 10^4
/// or an unknown name in `only`.
std::vector<TestReport> verify_identities(std::uint64_t seed, std::size_t n, double floor_p,
                                          const VerifyOptions& opt = {});

}  // namespace stablemix
