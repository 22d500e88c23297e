#pragma once

#include <vector>

#include "psmooth/poly.hpp"

namespace psmooth {

// count of distinct real roots in (a, b]
int count_roots_in(const Poly& f, const Rat& a, const Rat& b);

// count of distinct real roots in (a, +inf)
int count_roots_gt(const Poly& f, const Rat& a);

// exact test: f(t) >= 0 for all t >= a
bool nonneg_on_ray(const Poly& f, const Rat& a);

// distinct real roots inside (lo, hi), each refined by bisection
std::vector<double> real_roots_in(const Poly& f, const Rat& lo, const Rat& hi);

// upper bound strictly above every real root
Rat cauchy_bound(const Poly& f);

}  // namespace psmooth
