#pragma once

#include <functional>
#include <vector>

#include "psmooth/factored.hpp"

namespace psmooth {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10);

// logarithmic integral with li(x) = 0 for |x| <= 2 and li(x) = -li(-x) for x <= -2
double li_classic(double x);

// integral over 0 < t < x of 1/prod_i log|F_i(t)| restricted to min_i |F_i(t)| >= 2
double li_poly(const FactoredPoly& F, double x);

// integral over t in (t*, x) of 1/prod_i log(f_i(t)/h_i) where t* is the first
// point past which every f_i(t)/h_i >= 2; factors must be effective
double li_poly_weighted(const FactoredPoly& f, const std::vector<u64>& h, double x);

}  // namespace psmooth
