#pragma once

#include <map>
#include <string>
#include <vector>

#include "psmooth/poly.hpp"

namespace psmooth {

// sign * content * product of primitive factors with positive leading
// coefficients; declared factors are trusted to be irreducible
struct FactoredPoly {
  int sign = 1;
  Int content = 1;
  std::vector<std::pair<Poly, unsigned>> factors;  // (primitive factor, multiplicity)

  static FactoredPoly from_poly(const Poly& f);  // single declared factor
  void normalize();                              // pull signs/contents out of factors
  void validate() const;                         // throws on malformed data

  Poly expand() const;
  Int eval(const Int& t) const;
  unsigned num_distinct() const { return (unsigned)factors.size(); }
  int degree() const;
  int max_factor_degree() const;
  unsigned count_max_degree() const;  // factors of maximal degree
  bool operator==(const FactoredPoly& o) const;
};

FactoredPoly parse_factored(const std::string& text);
std::string to_string(const FactoredPoly& F);

struct StructuralReport {
  bool squarefree = false;
  bool primitive = false;
  bool balanced = false;
  bool effective = false;
  bool admissible = false;
  bool exclusive = false;
  std::map<std::string, std::string> witness;  // failure explanations by flag name
};

StructuralReport structural_report(const FactoredPoly& F);

// modulus for the admissible-and-exclusive rescaling of a squarefree F
Int compute_Q(const FactoredPoly& F);

// F(Q t + a) with every factor re-primitivized
FactoredPoly salvage(const FactoredPoly& F, const Int& a);

// drop lower-degree factors and multiplicities, then shift so that every
// remaining factor g has g(t0) >= 2 and g'(t) >= 1 for t >= t0
std::pair<FactoredPoly, Int> make_effective_balanced(const FactoredPoly& F, double alpha);

FactoredPoly fhb_transform(const FactoredPoly& f, const Int& h, const Int& b);
FactoredPoly restrict_to_progression(const FactoredPoly& F, const Int& q, const Int& a);

}  // namespace psmooth
