#pragma once

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"

namespace psmooth {

struct SingularSeries {
  double value = 0;
  bool admissible = true;
  u64 truncation = 0;
  double value_half = 0;    // same product cut at truncation/2
  double tail_estimate = 0;
};

// truncated Euler product prod_{p <= P} (1-1/p)^-K (1 - sigma(F;p)/p) for a
// squarefree primitive F with K distinct factors; zero when not admissible
SingularSeries singular_series(const FactoredPoly& F, u64 P, Workspace& ws);

// root count mod p of the product of the distinct factors of F
u64 sigma_union_p(const FactoredPoly& F, u64 p);

// prime-sum surrogate for rho(u): 1 - log u plus the Mertens-type sum over
// t^(1/u) < p <= sqrt(t), empty when u <= 2
double mertens_rho(double u, double t, Workspace& ws);

}  // namespace psmooth
