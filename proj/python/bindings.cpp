#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uniflow/chain_structure.hpp"
#include "uniflow/cli.hpp"
#include "uniflow/flow_sim.hpp"
#include "uniflow/polynomial.hpp"
#include "uniflow/sl2.hpp"

namespace py = pybind11;
using namespace uniflow;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string classify_json(const std::string& spec) {
  auto alg = resolve_algebra(Json::parse(spec));
  auto r = classify(alg.algebra, alg.u);
  return Json{{"algebra", alg.name},
              {"depths", r.depths},
              {"gr", r.gr},
              {"invariant_cocompact", r.invariant_cocompact},
              {"invariant_bounds", {r.invariant_lower, r.invariant_upper}},
              {"standard", r.standard}}
      .dump();
}

py::tuple run_json(const std::string& command, const std::string& config) {
  RunConfig cfg;
  apply_config(cfg, Json::parse(config));
  cfg.command = command;
  auto out = run(cfg);
  return py::make_tuple(out.exit_code, Json(out.report).dump(), out.error);
}

}  // namespace

PYBIND11_MODULE(_uniflow, m) {
  m.doc() = "native core of the uniflow package";

  py::register_exception<Error>(m, "UniflowError", PyExc_RuntimeError);

  m.def("classify_json", &classify_json, py::arg("spec"));
  m.def("run_json", &run_json, py::arg("command"), py::arg("config"));
  m.def("growth_rate", py::overload_cast<const std::vector<int>&>(&growth_rate), py::arg("depths"));
  m.def("sl_d_single_block_gr", &sl_d_single_block_gr, py::arg("d"), py::arg("l"));
  m.def("coefficient_bounds_constant", &coefficient_bounds_constant, py::arg("d"));

  py::class_<KAKDecomposition>(m, "KAK")
      .def_readonly("theta1", &KAKDecomposition::theta1)
      .def_readonly("s", &KAKDecomposition::s)
      .def_readonly("theta2", &KAKDecomposition::theta2)
      .def("recompose", &KAKDecomposition::recompose);
  m.def("kak", &kak, py::arg("g"));

  m.def("psi", [](double a_v, double a_x, double t) { return psi_match(a_v, a_x, t).psi; }, py::arg("a_v"),
        py::arg("a_x"), py::arg("t"));

  m.def("reduce", [](const Mat2& g) {
    auto p = reduce(g);
    return py::make_tuple(p.rep, Eigen::Matrix2d(p.word.cast<double>()));
  }, py::arg("g"));
  m.def("lattice_count", py::overload_cast<double>(&lattice_count), py::arg("t"));
  m.def("cusp_kappa", [](std::size_t samples, std::uint64_t seed) {
    auto r = cusp_tail(samples, seed);
    return py::make_tuple(r.kappa, r.kappa_lo, r.kappa_hi);
  }, py::arg("samples"), py::arg("seed"));
}
