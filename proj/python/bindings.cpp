#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "simplexint/errors.hpp"
#include "simplexint/exact_moments.hpp"
#include "simplexint/prior_expr.hpp"
#include "simplexint/quadrature.hpp"
#include "simplexint/simplex_sphere.hpp"
#include "simplexint/special_fn.hpp"

namespace py = pybind11;
using namespace simplexint;

namespace {

QuadratureSpec make_spec(const std::string& scheme, int nodes, std::uint64_t samples,
                         std::uint64_t seed, double rel_tol, double budget) {
  QuadratureSpec spec;
  if (scheme == "gauss") {
    spec.scheme = Scheme::gauss_grid;
  } else if (scheme == "mc") {
    spec.scheme = Scheme::monte_carlo;
  } else if (scheme == "oracle") {
    spec.scheme = Scheme::nested_oracle;
  } else {
    throw std::invalid_argument("scheme must be 'gauss', 'mc' or 'oracle'");
  }
  spec.nodes_per_axis = nodes;
  spec.samples = samples;
  spec.seed = seed;
  spec.rel_tol = rel_tol;
  spec.evaluation_budget = budget;
  return spec;
}

py::dict estimate_dict(const IntegralEstimate& e) {
  py::dict d;
  d["log_value"] = e.value.log_value();
  d["value"] = e.value.linear();
  d["std_error"] = e.std_error;
  d["evaluations"] = e.evaluations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Dirichlet posterior moments and integration over the probability simplex";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<SyntaxError>(m, "PriorSyntaxError", PyExc_ValueError);
  py::register_exception<EvaluationError>(m, "PriorEvaluationError", PyExc_ValueError);

  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("log_beta", &log_beta, py::arg("a"), py::arg("b"));
  m.def("log_factorial", &log_factorial, py::arg("k"));

  m.def(
      "angles_to_simplex",
      [](std::vector<double> theta) {
        const SimplexPoint p = angles_to_simplex(AngleVector(std::move(theta)));
        return std::vector<double>(p.values().begin(), p.values().end());
      },
      py::arg("theta"));
  m.def(
      "simplex_to_angles",
      [](std::vector<double> p) {
        const AngleVector a = simplex_to_angles(SimplexPoint(std::move(p)));
        return std::vector<double>(a.values().begin(), a.values().end());
      },
      py::arg("p"));
  m.def(
      "log_jacobian",
      [](std::vector<double> theta) {
        return log_jacobian(AngleVector(std::move(theta))).log_value();
      },
      py::arg("theta"));
  m.def(
      "log_kernel",
      [](std::size_t j, std::vector<double> counts, double theta) {
        return log_kernel(j, ExponentVector(std::move(counts)), theta);
      },
      py::arg("j"), py::arg("counts"), py::arg("theta"),
      "ln K_j(theta) with 0-based kernel index j");

  m.def(
      "log_normalizer",
      [](std::vector<double> counts) {
        return log_normalizer(ExponentVector(std::move(counts))).log_value();
      },
      py::arg("counts"));
  m.def(
      "moment",
      [](std::vector<double> counts, std::vector<double> orders) {
        return moment(ExponentVector(std::move(counts)), MomentIndex(std::move(orders)));
      },
      py::arg("counts"), py::arg("orders"));

  auto per_bin = [&m](const char* name, double (*fn)(const ExponentVector&, std::size_t)) {
    m.def(
        name,
        [fn](std::vector<double> counts) {
          const ExponentVector ev(std::move(counts));
          std::vector<double> out(ev.bins());
          for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(ev, i);
          return out;
        },
        py::arg("counts"));
  };
  per_bin("means", &mean);
  per_bin("variances", &variance);
  per_bin("std_devs", &std_dev);
  per_bin("skewnesses", &skewness);
  m.def(
      "covariance",
      [](std::vector<double> counts, std::size_t i, std::size_t j) {
        return covariance(ExponentVector(std::move(counts)), i, j);
      },
      py::arg("counts"), py::arg("i"), py::arg("j"));

  m.def(
      "integrate",
      [](std::vector<double> counts, const std::string& prior, const std::string& scheme,
         int nodes, std::uint64_t samples, std::uint64_t seed, double rel_tol, double budget) {
        const ExponentVector ev(std::move(counts));
        const PriorExpression expr = PriorExpression::parse(prior);
        expr.check_bins(ev.bins());
        const QuadratureSpec spec = make_spec(scheme, nodes, samples, seed, rel_tol, budget);
        IntegralEstimate est;
        {
          py::gil_scoped_release release;
          est = integrate_power_product(
              ev, spec, [&](std::span<const double> p) { return expr.evaluate(p); });
        }
        return estimate_dict(est);
      },
      py::arg("counts"), py::arg("prior") = "1", py::arg("scheme") = "gauss",
      py::arg("nodes") = 32, py::arg("samples") = 100000, py::arg("seed") = 0,
      py::arg("rel_tol") = 1e-11, py::arg("budget") = kDefaultEvaluationBudget,
      "Integral of prod p_i^counts_i * prior(p) over the simplex");
  m.def(
      "integrate_separable",
      [](std::vector<double> counts, int nodes) {
        QuadratureSpec spec;
        spec.nodes_per_axis = nodes;
        return estimate_dict(integrate_separable(ExponentVector(std::move(counts)), spec));
      },
      py::arg("counts"), py::arg("nodes") = 64);
  m.def(
      "nested_oracle",
      [](std::vector<double> counts, double rel_tol) {
        QuadratureSpec spec;
        spec.scheme = Scheme::nested_oracle;
        spec.rel_tol = rel_tol;
        return estimate_dict(nested_oracle(ExponentVector(std::move(counts)), spec));
      },
      py::arg("counts"), py::arg("rel_tol") = 1e-11);

  py::class_<PriorExpression>(m, "PriorExpression")
      .def_static(
          "parse", [](const std::string& s) { return PriorExpression::parse(s); }, py::arg("source"))
      .def("evaluate",
           [](const PriorExpression& e, std::vector<double> p) { return e.evaluate(p); },
           py::arg("p"))
      .def_property_readonly("source", &PriorExpression::source)
      .def_property_readonly("required_bins", &PriorExpression::required_bins)
      .def("__str__", &PriorExpression::to_string)
      .def("__eq__", [](const PriorExpression& a, const PriorExpression& b) { return a == b; });

  m.attr("PRIOR_GRAMMAR_VERSION") = kPriorGrammarVersion;
}
