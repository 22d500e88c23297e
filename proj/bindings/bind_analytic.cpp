#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "common.hpp"
#include "psmooth/li.hpp"
#include "psmooth/singular.hpp"

namespace py = pybind11;
using namespace psmooth;
using psmoothpy::pick_P;
using psmoothpy::ws;

void init_analytic(py::module_& m) {
  m.def("rho",
        [](double u) {
          const DickmanTable& t = ws().dickman();
          if (u > t.u_max())
            throw domain_error("u beyond the rho table; raise rho_umax");
          return t.rho(u);
        },
        py::arg("u"), "Dickman rho via the delay differential equation");

  m.def("mertens_rho",
        [](double u, double t) {
          py::gil_scoped_release rel;
          return mertens_rho(u, t, ws());
        },
        py::arg("u"), py::arg("t"),
        "prime-sum surrogate 1 - log u + sum over t^(1/u) < p <= sqrt(t)");

  m.def("li", &li_classic, py::arg("x"),
        "logarithmic integral with li(x) = 0 for |x| <= 2");

  m.def("li_poly",
        [](const FactoredPoly& F, double x) {
          py::gil_scoped_release rel;
          return li_poly(F, x);
        },
        py::arg("F"), py::arg("x"),
        "integral of 1/prod log|F_i(t)| over 0 < t < x, min |F_i| >= 2");

  m.def("singular_series",
        [](const FactoredPoly& F, u64 P) {
          SingularSeries s;
          {
            py::gil_scoped_release rel;
            s = singular_series(F, pick_P(P), ws());
          }
          py::dict d;
          d["value"] = s.value;
          d["admissible"] = s.admissible;
          d["truncation"] = s.truncation;
          d["value_half"] = s.value_half;
          d["tail_estimate"] = s.tail_estimate;
          return d;
        },
        py::arg("F"), py::arg("P") = 0,
        "truncated Euler product for C(F); P = 0 takes the configured default");
}
