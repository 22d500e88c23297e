#pragma once

#include <pybind11/pybind11.h>

#include <string>

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"
#include "psmooth/verify.hpp"

namespace psmoothpy {

namespace py = pybind11;

// process-wide workspace shared by all module-level functions
psmooth::Workspace& ws();
void apply_config(const py::kwargs& kw);

py::object to_py_int(const psmooth::Int& v);
py::object to_fraction(const psmooth::Rat& r);
py::dict report_to_dict(const psmooth::ExperimentReport& rep);

// factored grammar, or a bare polynomial as a single declared factor
psmooth::FactoredPoly factored_from_text(const std::string& s);

inline psmooth::u64 pick_P(psmooth::u64 P) {
  return P ? P : ws().config().truncation;
}

}  // namespace psmoothpy

void init_poly(pybind11::module_& m);
void init_analytic(pybind11::module_& m);
void init_counts(pybind11::module_& m);
void init_meanvalue(pybind11::module_& m);
