#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "common.hpp"
#include "psmooth/factored.hpp"
#include "psmooth/localroots.hpp"
#include "psmooth/poly.hpp"

namespace py = pybind11;
using namespace psmooth;
using psmoothpy::factored_from_text;
using psmoothpy::to_fraction;
using psmoothpy::to_py_int;

void init_poly(py::module_& m) {
  py::class_<Poly>(m, "Poly", "dense integer polynomial")
      .def(py::init([](const std::string& text) { return parse_poly(text); }),
           py::arg("text"))
      .def(py::init([](const std::vector<long long>& coeffs) {
             std::vector<Int> c;
             for (long long v : coeffs) c.emplace_back((long)v);
             return Poly(std::move(c));
           }),
           py::arg("coeffs"), "ascending coefficients")
      .def_property_readonly("degree", &Poly::degree)
      .def_property_readonly("coeffs",
                             [](const Poly& f) {
                               py::list out;
                               for (const Int& c : f.coeffs()) out.append(to_py_int(c));
                               return out;
                             })
      .def("__call__",
           [](const Poly& f, long long t) { return to_py_int(f.eval(Int((long)t))); })
      .def("derivative", &Poly::derivative)
      .def("content", [](const Poly& f) { return to_py_int(f.content()); })
      .def("discriminant", [](const Poly& f) { return to_py_int(discriminant(f)); })
      .def("shifted", [](const Poly& f, long long t0) { return f.shifted(Int((long)t0)); })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__str__", [](const Poly& f) { return to_string(f); })
      .def("__repr__", [](const Poly& f) { return "Poly(\"" + to_string(f) + "\")"; });

  m.def("resultant",
        [](const Poly& a, const Poly& b) { return to_py_int(resultant(a, b)); });
  m.def("poly_gcd", &poly_gcd);
  m.def("is_squarefree", &is_squarefree);

  py::class_<FactoredPoly>(m, "FactoredPoly",
                           "sign * content * product of declared irreducible factors")
      .def(py::init(&factored_from_text), py::arg("text"),
           "factored grammar \"[t; t+2]\" or a bare polynomial as one factor")
      .def_property_readonly("degree", &FactoredPoly::degree)
      .def_property_readonly("num_distinct", &FactoredPoly::num_distinct)
      .def_property_readonly("factors",
                             [](const FactoredPoly& F) {
                               py::list out;
                               for (const auto& [g, mult] : F.factors)
                                 out.append(py::make_tuple(g, mult));
                               return out;
                             })
      .def("expand", &FactoredPoly::expand)
      .def("__call__",
           [](const FactoredPoly& F, long long t) { return to_py_int(F.eval(Int((long)t))); })
      .def("structure",
           [](const FactoredPoly& F) {
             StructuralReport r = structural_report(F);
             py::dict d;
             d["squarefree"] = r.squarefree;
             d["primitive"] = r.primitive;
             d["balanced"] = r.balanced;
             d["effective"] = r.effective;
             d["admissible"] = r.admissible;
             d["exclusive"] = r.exclusive;
             py::dict w;
             for (const auto& [k, v] : r.witness) w[py::str(k)] = v;
             d["witness"] = w;
             return d;
           })
      .def("Q", [](const FactoredPoly& F) { return to_py_int(compute_Q(F)); })
      .def("salvage",
           [](const FactoredPoly& F, long long a) { return salvage(F, Int((long)a)); },
           py::arg("a"))
      .def("fhb",
           [](const FactoredPoly& f, long long h, long long b) {
             return fhb_transform(f, Int((long)h), Int((long)b));
           },
           py::arg("h"), py::arg("b"))
      .def("restrict",
           [](const FactoredPoly& F, long long q, long long a) {
             return restrict_to_progression(F, Int((long)q), Int((long)a));
           },
           py::arg("q"), py::arg("a"))
      .def("effectivize",
           [](const FactoredPoly& F, double alpha) {
             auto [out, t0] = make_effective_balanced(F, alpha);
             return py::make_tuple(out, to_py_int(t0));
           },
           py::arg("alpha"))
      .def("__eq__", [](const FactoredPoly& a, const FactoredPoly& b) { return a == b; })
      .def("__str__", [](const FactoredPoly& F) { return to_string(F); })
      .def("__repr__",
           [](const FactoredPoly& F) { return "FactoredPoly(\"" + to_string(F) + "\")"; });

  py::class_<LocalRoots>(m, "LocalRoots", "memoized local root counts of one polynomial")
      .def(py::init<Poly, u64>(), py::arg("f"), py::arg("seed") = 0x243f6a8885a308d3ull)
      .def("roots_mod_p", [](LocalRoots& lr, u64 p) { return lr.roots_mod_p(p); },
           py::arg("p"))
      .def("sigma", [](LocalRoots& lr, u64 n) { return lr.sigma(n); }, py::arg("n"))
      .def("sigma_star",
           [](LocalRoots& lr, u64 n) { return to_fraction(lr.sigma_star(n)); }, py::arg("n"))
      .def("g_of", [](LocalRoots& lr, u64 n) { return to_fraction(lr.G_of(n)); },
           py::arg("n"))
      .def("root_set", [](LocalRoots& lr, u64 h) { return lr.root_set(h); }, py::arg("h"));

  m.def("roots_mod", [](const Poly& f, u64 n) { return root_set(f, n); }, py::arg("f"),
        py::arg("n"), "residues b in [1,n] with n | f(b)");
  m.def("sigma", [](const Poly& f, u64 n) { return sigma(f, n); }, py::arg("f"),
        py::arg("n"));
  m.def("sigma_star", [](const Poly& f, u64 n) { return to_fraction(sigma_star(f, n)); },
        py::arg("f"), py::arg("n"));
  m.def("g_of", [](const Poly& f, u64 n) { return to_fraction(G_of(f, n)); }, py::arg("f"),
        py::arg("n"));
}
