#include "stablemix/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "stablemix/errors.hpp"
#include "stablemix/stable.hpp"

namespace stablemix {

namespace {

// Inverse-CDF tables shared across calls and threads.  Building happens
// outside the lock; a concurrent duplicate build just loses the race.
template <class Build>
std::shared_ptr<const DensityTable> cached_table(const std::string& key, Build&& build) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const DensityTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const DensityTable>(build());
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(table)).first->second;
}

std::string key_of(const char* tag, std::initializer_list<double> xs) {
  std::string k = tag;
  char buf[32];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, ":%a", x);
    k += buf;
  }
  return k;
}

double sample_stable_unit(double alpha, RngState& rng) { return sample_stable(StableParams(alpha, 1.0), rng); }

}  // namespace

double sample_gamma(double shape, double rate, RngState& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("sample_gamma: shape and rate must be > 0");
  if (shape < 1.0) {
    // G_a = G_{a+1} U^{1/a}, in logs so tiny shapes do not underflow early.
    const double g = sample_gamma(shape + 1.0, 1.0, rng);
    return std::exp(std::log(g) + std::log(rng.uniform()) / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double sample_beta(double a, double b, RngState& rng) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("sample_beta: a and b must be > 0");
  const double x = sample_gamma(a, 1.0, rng);
  const double y = sample_gamma(b, 1.0, rng);
  return x / (x + y);
}

double sample_ml(const MLParams& p, RngState& rng, const NumericConfig& cfg) {
  if (p.theta() == 0.0) return std::pow(sample_stable_unit(p.alpha(), rng), -p.alpha());
  auto table = cached_table(key_of("ml", {p.alpha(), p.theta()}), [&] {
    return log_density_table([&](double t) { return ml2_density(p, t, cfg); }, ml2_log_moment(p, 1.0));
  });
  return std::exp(sample_table(*table, rng));
}

double sample_gml(const GMLParams& p, RngState& rng, const NumericConfig& cfg) {
  const double a = p.alpha();
  const MLParams m(a, p.beta() + p.theta());
  if (p.on_boundary()) return sample_ml(m, rng, cfg);
  const double x = sample_ml(m, rng, cfg);
  return x * sample_beta(p.theta() / a + p.gamma(), p.beta() / a - p.gamma(), rng);
}

double sample_mixture(const MixtureSpec& m, RngState& rng, const NumericConfig& cfg) {
  const double u = std::visit(
      [&](const auto& mix) -> double {
        using T = std::decay_t<decltype(mix)>;
        if constexpr (std::is_same_v<T, PointMass>) return mix.c;
        else if constexpr (std::is_same_v<T, GammaMixing>) return sample_gamma(mix.shape, mix.rate, rng);
        else if constexpr (std::is_same_v<T, MLParams>) return sample_ml(mix, rng, cfg);
        else if constexpr (std::is_same_v<T, GMLParams>) return sample_gml(mix, rng, cfg);
        else throw UnsupportedMixing("sample_mixture: a moment sequence cannot be sampled");
      },
      m.mixing());
  const double s = sample_stable_unit(m.sigma(), rng);
  return std::exp(std::log(m.z() * u) / m.sigma() + std::log(s));
}

double kolmogorov_q(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Jacobi theta form of the CDF, fast for small x.
    const double pi = std::numbers::pi;
    const double w = -pi * pi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double term = std::exp((2 * k - 1) * (2 * k - 1) * w);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-17 * sum) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {
double stephens_p(double d, double n_eff) {
  const double r = std::sqrt(n_eff);
  return kolmogorov_q((r + 0.12 + 0.11 / r) * d);
}
}  // namespace

KsResult ks_one_sample(std::vector<double>& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ArgumentError("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, stephens_p(d, n)};
}

KsResult ks_two_sample(std::vector<double>& a, std::vector<double>& b) {
  if (a.empty() || b.empty()) throw ArgumentError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return {d, stephens_p(d, n * m / (n + m))};
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{"ratio-of-stables", "unit-lamperti", "power-lamperti",
                                              "ml-beta-product", "gml-beta-product"};
  return names;
}

std::vector<TestReport> verify_identities(std::uint64_t seed, std::size_t n, double floor_p,
                                          const VerifyOptions& opt) {
  if (n < 10000) throw ArgumentError("verify_identities: n must be at least 10000");
  const auto& names = identity_names();
  for (const auto& o : opt.only)
    if (std::find(names.begin(), names.end(), o) == names.end())
      throw ArgumentError("verify_identities: unknown identity '" + o + "'");
  const double a = opt.alpha, z = opt.z;
  const StableParams sz(a, z);
  const auto& cfg = opt.cfg;

  // Two draws per value, sequenced explicitly so the stream order is fixed.
  auto ratio = [a](const StableParams& num, RngState& rng) {
    const double x = sample_stable(num, rng);
    return x / sample_stable_unit(a, rng);
  };
  auto draw = [n](auto&& f) {
    std::vector<double> v(n);
    for (auto& x : v) x = f();
    return v;
  };

  std::vector<TestReport> out;
  const RngState root(seed);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& name = names[i];
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end()) continue;
    RngState lhs_rng = root.split(i).split(0), rhs_rng = root.split(i).split(1);
    std::vector<double> lhs, rhs;
    if (name == "ratio-of-stables") {
      lhs = draw([&] { return ratio(sz, lhs_rng); });
      const MixtureSpec lamperti(a, z, MLParams(a, 0.0));
      rhs = draw([&] { return sample_mixture(lamperti, rhs_rng, cfg); });
    } else if (name == "unit-lamperti") {
      // Compared through logit(X/(1+X)) = log X, which keeps resolution near 1.
      lhs = draw([&] { return std::log(ratio(sz, lhs_rng)); });
      auto table = cached_table(key_of("unit", {a, z}), [&] {
        return line_density_table(
            [&](double y) {
              // u rounds to 0 or 1 past |y| ~ 37; the mass out there is far below KS resolution.
              const double u = 1.0 / (1.0 + std::exp(-y));
              if (!(u > 0.0 && u < 1.0)) return 0.0;
              return lamperti_unit_density(a, z, u) * u * (1.0 - u);
            },
            std::log(z) / a);
      });
      rhs = draw([&] { return sample_table(*table, rhs_rng); });
    } else if (name == "power-lamperti") {
      lhs = draw([&] { return a * std::log(ratio(StableParams(a, 1.0), lhs_rng)); });
      auto table = cached_table(key_of("power", {a}), [&] {
        return log_density_table([&](double v) { return lamperti_ratio_density(a, v); }, 0.0);
      });
      rhs = draw([&] { return sample_table(*table, rhs_rng); });
    } else if (name == "ml-beta-product") {
      const MLParams up(a, opt.theta + 1.0), base(a, opt.theta);
      lhs = draw([&] {
        const double m = sample_ml(up, lhs_rng, cfg);
        return m * sample_beta(opt.theta / a + 1.0, 1.0 / a - 1.0, lhs_rng);
      });
      rhs = draw([&] { return sample_ml(base, rhs_rng, cfg); });
    } else {
      const GMLParams& g = opt.gml;
      lhs = draw([&] { return sample_gml(g, lhs_rng, cfg); });
      auto table = cached_table(key_of("gml", {g.alpha(), g.theta(), g.beta(), g.gamma()}), [&] {
        return log_density_table([&](double t) { return gml_density(g, t, cfg); }, gml_log_moment(g, 1.0), 0.05);
      });
      rhs = draw([&] { return std::exp(sample_table(*table, rhs_rng)); });
    }
    const KsResult r = ks_two_sample(lhs, rhs);
    out.push_back({name, r.statistic, r.p_value, n, r.p_value > floor_p});
  }
  return out;
}

}  // namespace stablemix
