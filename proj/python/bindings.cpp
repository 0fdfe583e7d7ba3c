#include <pybind11/pybind11.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>

#include "nullitylab/io.hpp"
#include "nullitylab/nullity.hpp"
#include "nullitylab/report.hpp"
#include "nullitylab/family.hpp"

namespace py = pybind11;
using namespace nullitylab;

namespace {

Tolerances make_tol(double alg, double sub, double pd) {
  Tolerances t;
  t.alg = alg;
  t.sub = sub;
  t.pd = pd;
  return t;
}

}  // namespace

PYBIND11_MODULE(_nullitylab, m) {
  m.doc() = "Curvature nullity of left-invariant metrics on Lie groups";
  m.attr("__version__") = version();
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  static py::exception<Error> error(m, "NullityError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<MetricLieAlgebra>(m, "MetricLieAlgebra")
      .def_property_readonly("dim", &MetricLieAlgebra::dim)
      .def_property_readonly("labels", &MetricLieAlgebra::labels)
      .def_property_readonly("metric", &MetricLieAlgebra::metric)
      .def("bracket", py::overload_cast<int, int>(&MetricLieAlgebra::bracket, py::const_), py::arg("i"),
           py::arg("j"))
      .def("change_basis", &MetricLieAlgebra::change_basis, py::arg("p"))
      .def("to_toml", [](const MetricLieAlgebra& a) { return format_algebra(a); })
      .def("__repr__", [](const MetricLieAlgebra& a) { return "<MetricLieAlgebra dim=" + std::to_string(a.dim()) + ">"; });

  m.def("parse_algebra", &parse_algebra, py::arg("text"));
  m.def("example", [](int d) { return build_example(ExampleSpec::paper_default(d)); }, py::arg("d"));
  m.def("custom_example", [](const MatrixXd& a) { return build_example(ExampleSpec::custom(a)); },
        py::arg("action"));
  m.def("default_scale", &default_scale, py::arg("d"));

  m.def("is_valid", [](const MetricLieAlgebra& a) { return validate(a).valid(); }, py::arg("alg"));
  m.def("nomizu_operators", [](const MetricLieAlgebra& a) { return nomizu_table(a).ops(); }, py::arg("alg"));
  m.def(
      "curvature_operator",
      [](const MetricLieAlgebra& a, int i, int j) { return MatrixXd(curvature_table(a, nomizu_table(a)).op(i, j)); },
      py::arg("alg"), py::arg("i"), py::arg("j"));
  m.def(
      "ricci_eigenvalues", [](const MetricLieAlgebra& a) { return VectorXd(ricci(curvature_table(a, nomizu_table(a))).eigenvalues); },
      py::arg("alg"));
  m.def(
      "nullity_basis",
      [](const MetricLieAlgebra& a, double tol) {
        Tolerances t;
        t.alg = tol;
        return MatrixXd(nullity_space(curvature_table(a, nomizu_table(a, t)), t).basis());
      },
      py::arg("alg"), py::arg("tol") = 1e-8);

  m.def(
      "analyze_json",
      [](const MetricLieAlgebra& a, const std::string& digest, double tol_alg, double tol_sub, double tol_pd,
         std::uint64_t seed, int rounds) {
        return report_to_json(analyze(a, digest, make_tol(tol_alg, tol_sub, tol_pd), seed, rounds));
      },
      py::arg("alg"), py::arg("digest") = "", py::arg("tol_alg") = 1e-8, py::arg("tol_sub") = 1e-8,
      py::arg("tol_pd") = 1e-10, py::arg("seed") = kDefaultSeed, py::arg("rounds") = 20);

  m.def(
      "certify_json",
      [](int d, double tol_alg, std::uint64_t seed) {
        const Tolerances t = make_tol(tol_alg, 1e-8, 1e-10);
        return certificate_to_json(verify_section8(ExampleSpec::paper_default(d), t, seed), t, seed);
      },
      py::arg("d"), py::arg("tol_alg") = 1e-8, py::arg("seed") = kDefaultSeed);

  m.def(
      "transport_json",
      [](int d, int v, int z, const std::vector<double>& t) {
        const ExampleSpec spec = ExampleSpec::paper_default(d);
        return transport_to_json(transport_check(spec, VectorXd::Unit(spec.n(), v - 1), z - 1, t), d, v, z);
      },
      py::arg("d"), py::arg("v"), py::arg("z"), py::arg("t"));
}
