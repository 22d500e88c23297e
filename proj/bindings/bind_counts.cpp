#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "common.hpp"
#include "psmooth/sieve.hpp"
#include "psmooth/verify.hpp"

namespace py = pybind11;
using namespace psmooth;
using psmoothpy::pick_P;
using psmoothpy::report_to_dict;
using psmoothpy::ws;

void init_counts(py::module_& m) {
  m.def("prime_count",
        [](u64 x) {
          py::gil_scoped_release rel;
          return prime_count(x, ws());
        },
        py::arg("x"));
  m.def("prime_count_ap",
        [](u64 x, u64 q, i64 a) {
          py::gil_scoped_release rel;
          return prime_count_ap(x, q, a, ws());
        },
        py::arg("x"), py::arg("q"), py::arg("a"));
  m.def("smooth_count",
        [](u64 x, u64 y) {
          py::gil_scoped_release rel;
          return smooth_count(x, y, ws());
        },
        py::arg("x"), py::arg("y"), "Psi(x,y)");
  m.def("smooth_count_ap",
        [](u64 x, u64 y, u64 q, i64 a) {
          py::gil_scoped_release rel;
          return smooth_count_ap(x, y, q, a, ws());
        },
        py::arg("x"), py::arg("y"), py::arg("q"), py::arg("a"));
  m.def("poly_smooth_count",
        [](const FactoredPoly& F, u64 x, u64 y) {
          py::gil_scoped_release rel;
          return poly_smooth_count(F, x, y, ws());
        },
        py::arg("F"), py::arg("x"), py::arg("y"), "Psi(F;x,y)");
  m.def("shifted_prime_smooth_count",
        [](i64 a, u64 x, u64 y) {
          py::gil_scoped_release rel;
          return shifted_prime_smooth_count(a, x, y, ws());
        },
        py::arg("a"), py::arg("x"), py::arg("y"), "Phi_a(x,y)");
  m.def("prime_values_count",
        [](const FactoredPoly& F, u64 x) {
          py::gil_scoped_release rel;
          return prime_values_count(F, x, ws());
        },
        py::arg("F"), py::arg("x"), "pi(F;x)");
  m.def("m_count",
        [](const FactoredPoly& f, u64 x, u64 y) {
          py::gil_scoped_release rel;
          return m_count(f, x, y, ws());
        },
        py::arg("f"), py::arg("x"), py::arg("y"),
        "M(f;x,y): n <= x with every prime factor of every f_i(n) above y");

  m.def("error_term",
        [](const FactoredPoly& F, u64 x, u64 P) {
          ErrorTerm et;
          {
            py::gil_scoped_release rel;
            et = error_term(F, x, pick_P(P), ws());
          }
          py::dict d;
          d["prime_values"] = et.prime_values;
          d["constant"] = et.constant;
          d["li"] = et.li;
          d["value"] = et.value;
          d["normalized"] = et.normalized;
          d["admissible"] = et.admissible;
          d["used_probable_prime"] = et.used_probable_prime;
          return d;
        },
        py::arg("F"), py::arg("x"), py::arg("P") = 0,
        "E(F;x) = pi(F;x) - C(F) li(F;x); P = 0 takes the configured default");

  m.def("verify_identity",
        [](const FactoredPoly& F, u64 x, u64 y) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = check_inclusion_exclusion(F, x, y, ws());
          }
          return report_to_dict(rep);
        },
        py::arg("F"), py::arg("x"), py::arg("y"),
        "inclusion-exclusion between smooth and rough counts, exact");
  m.def("verify_theorem1",
        [](const FactoredPoly& F, const std::vector<u64>& xs, const std::vector<double>& us,
           double band, u64 P) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = theorem_main_experiment(F, xs, us, pick_P(P), band, ws());
          }
          return report_to_dict(rep);
        },
        py::arg("F"), py::arg("xs"), py::arg("us"), py::arg("band") = 0.05, py::arg("P") = 0,
        "smooth polynomial values against prod rho(d_i u)");
  m.def("verify_theorem2",
        [](i64 a, const std::vector<u64>& xs, const std::vector<double>& us, double band) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = theorem_prime_experiment(a, xs, us, band, ws());
          }
          return report_to_dict(rep);
        },
        py::arg("a"), py::arg("xs"), py::arg("us"), py::arg("band") = 0.05,
        "smooth shifted primes against rho(u)");
  m.def("verify_ap",
        [](u64 x, u64 y, u64 q, i64 a) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = hypothesis_AP_probe(x, y, q, a, ws());
          }
          return report_to_dict(rep);
        },
        py::arg("x"), py::arg("y"), py::arg("q"), py::arg("a"),
        "primes in a segment of a progression vs two predicted forms");
  m.def("verify_uh",
        [](const FactoredPoly& F, const std::vector<u64>& xs, u64 P) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = hypothesis_UH_probe(F, xs, pick_P(P), ws());
          }
          return report_to_dict(rep);
        },
        py::arg("F"), py::arg("xs"), py::arg("P") = 0,
        "error term E(F;x) with the conjectural normalization");
  m.def("verify_cflb",
        [](const FactoredPoly& f, const std::vector<u64>& hs, u64 x, u64 P) {
          ExperimentReport rep;
          {
            py::gil_scoped_release rel;
            rep = check_cflb_identity(f, hs, x, pick_P(P), ws());
          }
          return report_to_dict(rep);
        },
        py::arg("f"), py::arg("hs"), py::arg("x") = 100, py::arg("P") = 0,
        "transformed singular series sum identity");
}
