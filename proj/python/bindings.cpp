#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "stablemix/chain.hpp"
#include "stablemix/checks.hpp"
#include "stablemix/errors.hpp"
#include "stablemix/mc.hpp"
#include "stablemix/mixture.hpp"
#include "stablemix/mlfam.hpp"
#include "stablemix/special.hpp"
#include "stablemix/stable.hpp"

namespace py = pybind11;
using namespace stablemix;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

template <class F>
py::array_t<double> draws(std::size_t n, F&& one) {
  std::vector<double> v(n);
  {
    py::gil_scoped_release release;
    for (auto& x : v) x = one();
  }
  return to_array(v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-sided stable, Mittag-Leffler, Linnik and Lamperti laws";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConstraintError>(m, "ConstraintError", domain);
  py::register_exception<PoleError>(m, "PoleError", domain);
  py::register_exception<OverflowError>(m, "OverflowError", error);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", error);
  py::register_exception<QuadratureError>(m, "QuadratureError", error);
  py::register_exception<TabulationError>(m, "TabulationError", error);
  py::register_exception<UnsupportedMixing>(m, "UnsupportedMixing", error);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  // special functions
  m.def("gamma", py::vectorize(gamma_fn), py::arg("x"));
  m.def("log_gamma", py::vectorize(log_gamma), py::arg("x"));
  m.def("rgamma", py::vectorize(rgamma), py::arg("x"));
  m.def("prabhakar_ml",
        py::vectorize([](double alpha, double beta, double gamma, double y) {
          return prabhakar_ml(PrabhakarParams(alpha, beta, gamma), y);
        }),
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("y"), "E^gamma_{alpha,beta}(-y) for y >= 0");

  // densities and transforms; every argument broadcasts
  m.def("stable_density",
        py::vectorize([](double t, double alpha, double z) { return stable_density(StableParams(alpha, z), t); }),
        py::arg("t"), py::arg("alpha"), py::arg("z") = 1.0);
  m.def("ml_density",
        py::vectorize([](double t, double alpha, double theta) { return ml2_density(MLParams(alpha, theta), t); }),
        py::arg("t"), py::arg("alpha"), py::arg("theta") = 0.0);
  m.def("ml_laplace",
        py::vectorize([](double x, double alpha, double theta) { return ml2_laplace(MLParams(alpha, theta), x); }),
        py::arg("x"), py::arg("alpha"), py::arg("theta") = 0.0);
  m.def("ml_moment", [](int k, double alpha, double theta) { return ml2_moment(MLParams(alpha, theta), k); },
        py::arg("k"), py::arg("alpha"), py::arg("theta") = 0.0);
  m.def("gml_density", py::vectorize([](double t, double alpha, double theta, double beta, double gamma) {
          return gml_density(GMLParams(alpha, theta, beta, gamma), t);
        }),
        py::arg("t"), py::arg("alpha"), py::arg("theta"), py::arg("beta"), py::arg("gamma"));
  m.def("gml_laplace", py::vectorize([](double x, double alpha, double theta, double beta, double gamma) {
          return gml_laplace(GMLParams(alpha, theta, beta, gamma), x);
        }),
        py::arg("x"), py::arg("alpha"), py::arg("theta"), py::arg("beta"), py::arg("gamma"));
  m.def("gml_moment",
        [](int k, double alpha, double theta, double beta, double gamma) {
          return gml_moment(GMLParams(alpha, theta, beta, gamma), k);
        },
        py::arg("k"), py::arg("alpha"), py::arg("theta"), py::arg("beta"), py::arg("gamma"));
  m.def("linnik_density", py::vectorize([](double t, double alpha, double shape, double rate, double z) {
          return linnik_density(LinnikParams(alpha, shape, rate, z), t);
        }),
        py::arg("t"), py::arg("alpha"), py::arg("shape"), py::arg("rate"), py::arg("z") = 1.0);
  m.def("linnik_laplace", py::vectorize([](double s, double alpha, double shape, double rate, double z) {
          return linnik_laplace(LinnikParams(alpha, shape, rate, z), s);
        }),
        py::arg("s"), py::arg("alpha"), py::arg("shape"), py::arg("rate"), py::arg("z") = 1.0);
  m.def("lamperti_density", py::vectorize([](double t, double alpha, double z) { return lamperti_density(alpha, z, t); }),
        py::arg("t"), py::arg("alpha"), py::arg("z") = 1.0);
  m.def("lamperti_unit_density",
        py::vectorize([](double u, double alpha, double z) { return lamperti_unit_density(alpha, z, u); }),
        py::arg("u"), py::arg("alpha"), py::arg("z") = 1.0);
  m.def("lamperti_ratio_density", py::vectorize(lamperti_ratio_density), py::arg("alpha"), py::arg("z"));
  m.def("lamperti_general_density",
        py::vectorize([](double t, double alpha, double theta, double beta, double gamma, double z) {
          return lamperti_general_density(GMLParams(alpha, theta, beta, gamma), z, t);
        }),
        py::arg("t"), py::arg("alpha"), py::arg("theta"), py::arg("beta"), py::arg("gamma"), py::arg("z") = 1.0);
  m.def("thorin_density",
        py::vectorize([](double t, double alpha, double gamma) { return thorin_density(alpha, gamma, t); }),
        py::arg("t"), py::arg("alpha"), py::arg("gamma"));
  m.def("transition_density",
        py::vectorize([](double u, double alpha, double t) { return transition_density(alpha, t, u); }),
        py::arg("u"), py::arg("alpha"), py::arg("t"), "q(u | t) of the Mittag-Leffler chain");

  // sampling; each call draws from stream `stream` of `seed`
  m.def("sample_stable",
        [](double alpha, double z, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          const StableParams p(alpha, z);
          RngState rng(seed, stream);
          return draws(n, [&] { return sample_stable(p, rng); });
        },
        py::arg("alpha"), py::arg("z") = 1.0, py::arg("n") = 1, py::arg("seed") = 42, py::arg("stream") = 0);
  m.def("sample_ml",
        [](double alpha, double theta, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          const MLParams p(alpha, theta);
          RngState rng(seed, stream);
          return draws(n, [&] { return sample_ml(p, rng); });
        },
        py::arg("alpha"), py::arg("theta") = 0.0, py::arg("n") = 1, py::arg("seed") = 42, py::arg("stream") = 0);
  m.def("sample_gml",
        [](double alpha, double theta, double beta, double gamma, std::size_t n, std::uint64_t seed,
           std::uint64_t stream) {
          const GMLParams p(alpha, theta, beta, gamma);
          RngState rng(seed, stream);
          return draws(n, [&] { return sample_gml(p, rng); });
        },
        py::arg("alpha"), py::arg("theta"), py::arg("beta"), py::arg("gamma"), py::arg("n") = 1, py::arg("seed") = 42,
        py::arg("stream") = 0);
  m.def("simulate_chain",
        [](double alpha, double theta, double start, int steps, std::uint64_t seed) {
          RngState rng(seed);
          std::vector<double> path;
          {
            py::gil_scoped_release release;
            path = simulate_chain(ChainState{alpha, theta, 0, start}, steps, rng);
          }
          return to_array(path);
        },
        py::arg("alpha"), py::arg("theta"), py::arg("start"), py::arg("steps"), py::arg("seed") = 42);

  // tests
  m.def("ks_two_sample",
        [](std::vector<double> a, std::vector<double> b) {
          const auto r = ks_two_sample(a, b);
          return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("a"), py::arg("b"), "(statistic, p_value)");
  m.def("ks_one_sample",
        [](std::vector<double> a, const std::function<double(double)>& cdf) {
          const auto r = ks_one_sample(a, cdf);
          return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("sample"), py::arg("cdf"), "(statistic, p_value)");
  m.def("verify_names", &verify_names);
  m.def("verify",
        [](std::uint64_t seed, std::size_t n, double floor, const std::vector<std::string>& only) {
          std::vector<TestReport> reports;
          {
            py::gil_scoped_release release;
            reports = run_verify(seed, n, floor, only);
          }
          py::list out;
          for (const auto& r : reports)
            out.append(py::dict(py::arg("name") = r.name, py::arg("statistic") = r.statistic,
                                py::arg("p_value") = r.p_value, py::arg("n") = r.n, py::arg("pass") = r.pass));
          return out;
        },
        py::arg("seed") = 42, py::arg("n") = 100000, py::arg("floor") = 0.01,
        py::arg("only") = std::vector<std::string>{});
}
