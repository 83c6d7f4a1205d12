#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "stablemix/errors.hpp"
#include "stablemix/mc.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/quadrature.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

using namespace stablemix;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kN = 1000000;

std::vector<double> draw(int n, const std::function<double()>& f) {
  std::vector<double> v(n);
  for (auto& x : v) x = f();
  return v;
}

// |mean of g(X) - expect| in standard errors
double z_score(const std::vector<double>& xs, const std::function<double(double)>& g, double expect) {
  double s = 0.0, s2 = 0.0;
  for (double x : xs) {
    const double y = g(x);
    s += y;
    s2 += y * y;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  return std::abs(mean - expect) / std::sqrt((s2 / n - mean * mean) / n);
}

double identity(double x) { return x; }
double square(double x) { return x * x; }

// CDF of the Lamperti law: T^a / z has density (sin pi a / (pi a)) / (x^2 + 2 x cos pi a + 1)
double lamperti_cdf(double a, double z, double t) {
  const double x = std::pow(t, a) / z;
  return 1.0 - std::atan2(std::sin(kPi * a), x + std::cos(kPi * a)) / (kPi * a);
}

}  // namespace

TEST_CASE("Kolmogorov distribution") {
  // scipy.special.kolmogorov
  CHECK(std::abs(kolmogorov_q(1.0) - 0.26999967167735456) < 1e-14);
  CHECK(std::abs(kolmogorov_q(0.5) - 0.9639452436648751) < 1e-14);
  CHECK(std::abs(kolmogorov_q(2.0) - 0.0006709252557796953) < 1e-16);
  CHECK(std::abs(kolmogorov_q(0.3) - 0.9999906941986655) < 1e-14);
  CHECK(std::abs(kolmogorov_q(1.18) - 0.1234538094297657) < 1e-14);
  CHECK(std::abs(kolmogorov_q(1.19) - 0.11774229287977166) < 1e-14);
  CHECK(kolmogorov_q(0.0) == 1.0);
  CHECK(kolmogorov_q(40.0) == 0.0);
}

TEST_CASE("KS statistics on small samples") {
  std::vector<double> u{0.7, 0.1, 0.4};
  const auto r = ks_one_sample(u, [](double x) { return x; });
  CHECK(std::abs(r.statistic - 0.3) < 1e-15);
  CHECK(std::abs(r.p_value - 0.89594472765883) < 1e-13);
  std::vector<double> a{3.0, 1.0, 2.0}, b{4.5, 1.5, 3.5, 2.5};
  const auto r2 = ks_two_sample(a, b);
  CHECK(r2.statistic == 0.5);
  CHECK(std::abs(r2.p_value - 0.6159657845199938) < 1e-13);
  std::vector<double> empty;
  CHECK_THROWS_AS(ks_one_sample(empty, [](double x) { return x; }), ArgumentError);
  CHECK_THROWS_AS(ks_two_sample(a, empty), ArgumentError);
}

TEST_CASE("gamma and beta samplers") {
  RngState rng(31);
  CHECK_THROWS_AS(sample_gamma(0.0, 1.0, rng), DomainError);
  CHECK_THROWS_AS(sample_beta(1.0, -1.0, rng), DomainError);
  const auto g1 = draw(kN, [&] { return sample_gamma(1.0, 1.0, rng); });
  CHECK(z_score(g1, identity, 1.0) < 3.0);
  const auto g2 = draw(kN, [&] { return sample_gamma(0.3, 2.0, rng); });
  CHECK(z_score(g2, square, 0.3 * 1.3 / 4.0) < 3.0);
  CHECK(z_score(g2, [](double x) { return std::exp(-x); }, std::pow(2.0 / 3.0, 0.3)) < 3.0);
  CHECK(z_score(g2, [](double x) { return std::exp(-4.0 * x); }, std::pow(2.0 / 6.0, 0.3)) < 3.0);
  const auto b = draw(kN, [&] { return sample_beta(2.0, 3.0, rng); });
  CHECK(z_score(b, identity, 0.4) < 3.0);
  for (double x : {1.0, 5.0}) {
    // E e^{-x B} for B ~ Beta(2, 3) by quadrature of its density 12 u (1-u)^2
    const double lt =
        integrate([&](double u) { return 12.0 * u * (1.0 - u) * (1.0 - u) * std::exp(-x * u); }, 0.0, 1.0).value;
    CHECK(z_score(b, [&](double u) { return std::exp(-x * u); }, lt) < 3.0);
  }
  std::vector<double> e(g1.begin(), g1.begin() + 100000);
  CHECK(ks_one_sample(e, [](double x) { return 1.0 - std::exp(-x); }).p_value > 0.01);
}

TEST_CASE("Mittag-Leffler sampler moments and transforms") {
  struct M {
    double a, th, m1, m2;
  };
  // gamma ratios in mpmath
  const M ms[] = {{0.5, 0.0, 1.1283791670955126, 2.0},
                  {0.5, 0.5, 1.772453850905516, 4.0},
                  {0.7, 1.3, 1.6667312931402292, 3.0828853787740914},
                  {0.3, -0.2, 0.40792164523719575, 0.58318103152060899}};
  RngState rng(32);
  for (const auto& m : ms) {
    const MLParams p(m.a, m.th);
    const auto xs = draw(kN, [&] { return sample_ml(p, rng); });
    CAPTURE(m.a);
    CAPTURE(m.th);
    CHECK(z_score(xs, identity, m.m1) < 3.0);
    CHECK(z_score(xs, square, m.m2) < 3.0);
    for (double x : {0.5, 2.0}) CHECK(z_score(xs, [&](double t) { return std::exp(-x * t); }, ml2_laplace(p, x)) < 3.0);
  }
}

TEST_CASE("Mittag-Leffler sampler at alpha = 1/2 is half-normal") {
  RngState rng(33);
  auto xs = draw(100000, [&] { return sample_ml(MLParams(0.5, 0.0), rng); });
  CHECK(ks_one_sample(xs, [](double m) { return std::erf(0.5 * m); }).p_value > 0.01);
}

TEST_CASE("generalised Mittag-Leffler sampler") {
  struct G {
    GMLParams p;
    double m1, m2;
  };
  const G gs[] = {{GMLParams(0.5, 0.25, 0.75, 1.0), 1.6925687506432689, 3.75},
                  {GMLParams(0.6, 0.1, 1.2, 1.5), 1.5552481115671729, 3.0005547756761682}};
  RngState rng(34);
  for (const auto& g : gs) {
    const auto xs = draw(kN, [&] { return sample_gml(g.p, rng); });
    CAPTURE(g.p.alpha());
    CHECK(z_score(xs, identity, g.m1) < 3.0);
    CHECK(z_score(xs, square, g.m2) < 3.0);
    for (double x : {0.5, 2.0})
      CHECK(z_score(xs, [&](double t) { return std::exp(-x * t); }, gml_laplace(g.p, x)) < 3.0);
  }
  // beta = gamma = 1 is ML(alpha, theta)
  auto r = draw(100000, [&] { return sample_gml(GMLParams(0.5, 0.0, 1.0, 1.0), rng); });
  CHECK(ks_one_sample(r, [](double m) { return std::erf(0.5 * m); }).p_value > 0.01);
  // boundary beta = alpha gamma is ML(alpha, beta + theta) with the same stream
  RngState r1(7), r2(7);
  CHECK(sample_gml(GMLParams(0.6, 0.2, 0.9, 1.5), r1) == sample_ml(MLParams(0.6, 1.1), r2));
}

TEST_CASE("mixture sampler") {
  RngState rng(35);
  CHECK_THROWS_AS(sample_mixture(MixtureSpec(0.5, 1.0, MomentSequence{{1.0}}), rng), UnsupportedMixing);
  SUBCASE("point mass is the stable law") {
    auto xs = draw(100000, [&] { return sample_mixture(MixtureSpec(0.5, 1.0, PointMass{4.0}), rng); });
    // f_{1/2}(.|4) has CDF erfc(2 / sqrt t)
    CHECK(ks_one_sample(xs, [](double t) { return std::erfc(2.0 / std::sqrt(t)); }).p_value > 0.01);
  }
  SUBCASE("Lamperti") {
    for (double a : {0.5, 0.7}) {
      const MixtureSpec m(a, 1.3, MLParams(a, 0.0));
      auto xs = draw(kN, [&] { return sample_mixture(m, rng); });
      for (double x : {0.5, 2.0}) {
        const double lt = prabhakar_ml(PrabhakarParams(a, 1.0, 1.0), 1.3 * std::pow(x, a));
        CHECK(z_score(xs, [&](double t) { return std::exp(-x * t); }, lt) < 3.0);
      }
      xs.resize(100000);
      CAPTURE(a);
      CHECK(ks_one_sample(xs, [&](double t) { return lamperti_cdf(a, 1.3, t); }).p_value > 0.01);
    }
  }
  SUBCASE("Linnik") {
    const MixtureSpec m(0.5, 1.0, GammaMixing{1.0, 1.0});
    const auto xs = draw(kN, [&] { return sample_mixture(m, rng); });
    CHECK(z_score(xs, [](double t) { return std::exp(-t); }, 0.5) < 3.0);
    const LinnikParams lp(0.5, 1.0, 1.0);
    CHECK(z_score(xs, [](double t) { return std::exp(-4.0 * t); }, linnik_laplace(lp, 4.0)) < 3.0);
  }
}

TEST_CASE("samplers are deterministic per stream") {
  RngState a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_ml(MLParams(0.6, 0.4), a) == sample_ml(MLParams(0.6, 0.4), b));
    CHECK(sample_gamma(0.7, 1.0, a) == sample_gamma(0.7, 1.0, b));
  }
}

TEST_CASE("identity suite") {
  CHECK_THROWS_AS(verify_identities(1, 9999, 0.01), ArgumentError);
  VerifyOptions bad;
  bad.only = {"no-such-identity"};
  CHECK_THROWS_AS(verify_identities(1, 10000, 0.01, bad), ArgumentError);

  const auto reports = verify_identities(1, 100000, 0.01);
  REQUIRE(reports.size() == identity_names().size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CAPTURE(reports[i].name);
    CAPTURE(reports[i].statistic);
    CHECK(reports[i].name == identity_names()[i]);
    CHECK(reports[i].n == 100000);
    CHECK(reports[i].p_value >= 0.0);
    CHECK(reports[i].p_value <= 1.0);
    CHECK(reports[i].pass == (reports[i].p_value > 0.01));
    CHECK(reports[i].pass);
  }

  VerifyOptions one;
  one.only = {"ml-beta-product"};
  const auto again = verify_identities(1, 100000, 0.01, one);
  REQUIRE(again.size() == 1);
  // same stream, same report
  CHECK(again[0].statistic == reports[3].statistic);
  CHECK(again[0].p_value == reports[3].p_value);
}
