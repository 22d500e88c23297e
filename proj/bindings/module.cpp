#include <pybind11/pybind11.h>

#include <memory>
#include <mutex>

#include "common.hpp"
#include "psmooth/util.hpp"

namespace py = pybind11;

namespace psmoothpy {

namespace {
std::mutex g_mu;
std::unique_ptr<psmooth::Workspace> g_ws;
}  // namespace

psmooth::Workspace& ws() {
  std::lock_guard<std::mutex> lock(g_mu);
  if (!g_ws) g_ws = std::make_unique<psmooth::Workspace>();
  return *g_ws;
}

void apply_config(const py::kwargs& kw) {
  psmooth::RunConfig cfg = ws().config();
  for (auto item : kw) {
    std::string key = py::cast<std::string>(item.first);
    py::handle v = item.second;
    std::string value;
    if (py::isinstance<py::bool_>(v))
      value = py::cast<bool>(v) ? "true" : "false";
    else
      value = py::cast<std::string>(py::str(v));
    cfg.set(key, value);
  }
  std::lock_guard<std::mutex> lock(g_mu);
  g_ws = std::make_unique<psmooth::Workspace>(std::move(cfg));
}

py::object to_py_int(const psmooth::Int& v) {
  std::string s = v.get_str();
  PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(obj);
}

py::object to_fraction(const psmooth::Rat& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.get_str());
}

py::dict report_to_dict(const psmooth::ExperimentReport& rep) {
  static py::object loads = py::module_::import("json").attr("loads");
  return loads(rep.to_json());
}

psmooth::FactoredPoly factored_from_text(const std::string& s) {
  if (s.find('[') != std::string::npos) return psmooth::parse_factored(s);
  return psmooth::FactoredPoly::from_poly(psmooth::parse_poly(s));
}

}  // namespace psmoothpy

PYBIND11_MODULE(_psmooth, m) {
  m.doc() = "smooth values of polynomials: local densities, exact counts, experiments";

  py::register_exception<psmooth::domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<psmooth::resource_error>(m, "ResourceError", PyExc_RuntimeError);

  m.def("configure", &psmoothpy::apply_config,
        "update the shared run configuration; accepted keys match the CLI config file "
        "(truncation, threads, cache_dir, prime_table_cap, sieve_threshold, rho_umax, ...)");

  init_poly(m);
  init_analytic(m);
  init_counts(m);
  init_meanvalue(m);
}
