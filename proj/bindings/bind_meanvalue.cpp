#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "common.hpp"
#include "psmooth/meanvalue.hpp"

namespace py = pybind11;
using namespace psmooth;
using psmoothpy::pick_P;
using psmoothpy::ws;

namespace {

py::dict constant_dict(const MeanValueConstant& c) {
  py::dict d;
  d["value"] = c.value;
  d["truncation"] = c.truncation;
  d["value_half"] = c.value_half;
  d["tail_estimate"] = c.tail_estimate;
  return d;
}

}  // namespace

void init_meanvalue(py::module_& m) {
  m.def("mg_sum",
        [](const std::string& g, u64 x) {
          MultFnSpec fn = make_mult_fn(g);
          py::gil_scoped_release rel;
          return Mg_sum(fn, x, ws());
        },
        py::arg("g"), py::arg("x"),
        "sum of g(n)/n over n <= x; g is a registry spec like \"one\" or \"sigma:[t; t+2]\"");
  m.def("mg_sum_coprime",
        [](const std::string& g, u64 x, u64 q) {
          MultFnSpec fn = make_mult_fn(g);
          py::gil_scoped_release rel;
          return Mg_sum_coprime(fn, x, q, ws());
        },
        py::arg("g"), py::arg("x"), py::arg("q"));
  m.def("coprime_multisum",
        [](const std::vector<std::string>& gs, const std::vector<u64>& xs) {
          std::vector<MultFnSpec> fns;
          for (const std::string& s : gs) fns.push_back(make_mult_fn(s));
          py::gil_scoped_release rel;
          return coprime_multisum(fns, xs, ws());
        },
        py::arg("gs"), py::arg("xs"),
        "sum of prod g_i(n_i)/n_i over pairwise-coprime tuples, n_i <= x_i");
  m.def("c_of_g",
        [](const std::string& g, u64 P) {
          MultFnSpec fn = make_mult_fn(g);
          MeanValueConstant c;
          {
            py::gil_scoped_release rel;
            c = c_of_g(fn, pick_P(P), ws());
          }
          return constant_dict(c);
        },
        py::arg("g"), py::arg("P") = 0, "mean value constant c(g)");
  m.def("c_q_of_g",
        [](const std::string& g, u64 q, u64 P) {
          MultFnSpec fn = make_mult_fn(g);
          MeanValueConstant c;
          {
            py::gil_scoped_release rel;
            c = c_q_of_g(fn, q, pick_P(P), ws());
          }
          return constant_dict(c);
        },
        py::arg("g"), py::arg("q"), py::arg("P") = 0);
  m.def("delta_q",
        [](const std::string& g, u64 q) { return delta_q(make_mult_fn(g), q); },
        py::arg("g"), py::arg("q"), "1 + sum over p | q of g(p) log p / p");
  m.def("kappa_estimate",
        [](const std::string& g, u64 w) {
          MultFnSpec fn = make_mult_fn(g);
          py::gil_scoped_release rel;
          return kappa_estimate(fn, w, ws());
        },
        py::arg("g"), py::arg("w"),
        "residual sum_{p<=w} g(p) log p / p - kappa log w");
  m.def("weighted_coprime_sum",
        [](const FactoredPoly& f, u64 x, double u, u64 P) {
          WeightedSum s;
          {
            py::gil_scoped_release rel;
            s = weighted_coprime_sum(f, x, u, pick_P(P), ws());
          }
          py::dict d;
          d["value"] = s.value;
          d["predicted"] = s.predicted;
          d["tuples"] = s.tuples;
          d["y"] = s.y;
          return d;
        },
        py::arg("f"), py::arg("x"), py::arg("u"), py::arg("P") = 0,
        "weighted coprime tuple sum against x log^k(du) / C(f)");
}
