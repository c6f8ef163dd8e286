#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ginibias/distributions.hpp"
#include "ginibias/errors.hpp"
#include "ginibias/expectation.hpp"
#include "ginibias/gini.hpp"
#include "ginibias/montecarlo.hpp"

namespace py = pybind11;
using namespace ginibias;

namespace {

Sample to_sample(const std::vector<double>& values) { return Sample(values); }

py::dict to_dict(const EstimatorStats& s) {
  py::dict d;
  d["mean"] = s.mean;
  d["relbias"] = s.relbias;
  d["rmse"] = s.rmse;
  d["mc_se"] = s.mc_se;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gini coefficient, exact finite-sample bias of its estimator, plug-in correction";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::enum_<Family>(m, "Family")
      .value("poisson", Family::poisson)
      .value("geometric", Family::geometric)
      .value("gamma", Family::gamma);

  py::class_<Model>(m, "Model")
      .def_static("poisson", &Model::poisson, py::arg("rate"))
      .def_static("geometric", &Model::geometric, py::arg("p"))
      .def_static("gamma", &Model::gamma, py::arg("shape"), py::arg("rate"))
      .def_property_readonly("family", &Model::family)
      .def("__repr__", &Model::describe)
      .def("__eq__", [](const Model& a, const Model& b) { return a == b; });

  m.def("mean", &mean, py::arg("model"));
  m.def("laplace", &laplace, py::arg("model"), py::arg("z"));
  m.def("cdf", &cdf, py::arg("model"), py::arg("x"));
  m.def("tilt", &tilt, py::arg("model"), py::arg("z"));
  m.def("gini_exact", &gini_exact, py::arg("model"));
  m.def("gini_series", &gini_series, py::arg("model"));
  m.def(
      "sample",
      [](const Model& model, std::size_t n, std::uint64_t seed) {
        const Sample s = sample(model, n, seed);
        return std::vector<double>(s.values().begin(), s.values().end());
      },
      py::arg("model"), py::arg("n"), py::arg("seed"));

  m.def(
      "estimate_gini", [](const std::vector<double>& x) { return estimate_gini(to_sample(x)).value; },
      py::arg("values"), "Upward-adjusted Gini estimator (0 for an all-zero sample).");
  m.def(
      "estimate_gini_naive",
      [](const std::vector<double>& x) { return estimate_gini_naive(to_sample(x)).value; },
      py::arg("values"));

  m.def(
      "expected_ghat_generic",
      [](const Model& model, int n) { return expected_ghat_generic(model, n).value; },
      py::arg("model"), py::arg("n"));
  m.def(
      "expected_ghat", [](const Model& model, int n) { return expected_ghat(model, n).value; },
      py::arg("model"), py::arg("n"));
  m.def(
      "poisson_expected_ghat", [](double lambda, int n) { return poisson_expected_ghat(lambda, n).value; },
      py::arg("lam"), py::arg("n"));
  m.def(
      "geometric_expected_ghat", [](double p, int n) { return geometric_expected_ghat(p, n).value; },
      py::arg("p"), py::arg("n"));
  m.def(
      "brute_force_expected_ghat",
      [](const Model& model, int n, std::int64_t k) { return brute_force_expected_ghat(model, n, k); },
      py::arg("model"), py::arg("n"), py::arg("truncation"));

  m.def(
      "bias",
      [](const Model& model, int n) {
        const BiasReport r = bias(model, n);
        py::dict d;
        d["n"] = r.n;
        d["gini"] = r.gini;
        d["expectation"] = r.expectation;
        d["bias"] = r.bias;
        d["lower_bound"] = r.lower_bound;
        d["upper_bound"] = r.upper_bound;
        d["abs_error_estimate"] = r.abs_error_estimate;
        d["method"] = std::string(to_string(r.method));
        return d;
      },
      py::arg("model"), py::arg("n"));

  m.def(
      "corrected_estimate",
      [](const std::vector<double>& x, Family family) {
        return corrected_estimate(to_sample(x), family);
      },
      py::arg("values"), py::arg("family"));

  m.def(
      "run_mc",
      [](Family family, std::vector<double> params, std::vector<int> sizes, std::size_t replications,
         std::uint64_t seed, double gamma_rate, bool clip_corrected, unsigned threads) {
        MCConfig config;
        config.family = family;
        config.params = std::move(params);
        config.sample_sizes = std::move(sizes);
        config.replications = replications;
        config.base_seed = seed;
        config.gamma_rate = gamma_rate;
        config.clip_corrected = clip_corrected;
        MCReport report;
        {
          py::gil_scoped_release release;
          report = run_mc(config, threads);
        }
        py::list cells;
        for (const CellReport& c : report.cells) {
          py::dict d;
          d["param"] = c.param;
          d["n"] = c.n;
          d["gini"] = c.gini;
          d["analytic_expectation"] = c.analytic_expectation;
          d["degenerate_count"] = c.degenerate_count;
          d["uncorrected"] = to_dict(c.uncorrected);
          d["corrected"] = to_dict(c.corrected);
          cells.append(d);
        }
        return cells;
      },
      py::arg("family"), py::arg("params"), py::arg("sample_sizes"), py::arg("replications"),
      py::arg("seed"), py::arg("gamma_rate") = 1.0, py::arg("clip_corrected") = false,
      py::arg("threads") = 0u);
}
