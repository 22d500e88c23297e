#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "psmooth/util.hpp"

namespace psmooth {

using Int = mpz_class;
using Rat = mpq_class;

// dense integer polynomial, coefficients ascending, no trailing zeros
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Int v);
  static Poly monomial(Int coeff, unsigned k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return (int)c_.size() - 1; }  // -1 for zero
  const Int& operator[](size_t i) const;             // 0 beyond degree
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& lc() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Int& s) const;
  Poly divexact(const Int& s) const;  // throws if not exact
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly derivative() const;
  Int eval(const Int& t) const;
  Rat eval(const Rat& t) const;
  double eval_double(double t) const;

  Int content() const;           // nonnegative, 0 for zero poly
  Poly primitive_part() const;   // throws on zero poly
  bool is_primitive() const { return content() == 1; }

  Poly compose_linear(const Int& a, const Int& b) const;  // f(a t + b)
  Poly shifted(const Int& t0) const { return compose_linear(1, t0); }

 private:
  std::vector<Int> c_;
  void trim();
  static const Int zero_;
};

Poly parse_poly(const std::string& text);
std::string to_string(const Poly& f);        // human form, descending powers
std::string to_dense_string(const Poly& f);  // (c0,c1,...,cD)

Int resultant(const Poly& a, const Poly& b);
Int discriminant(const Poly& f);  // deg >= 1
Poly poly_gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& f);

// f(h t + b)/h for h >= 1 and any integer b with h | f(b)
Poly fhb_transform(const Poly& f, const Int& h, const Int& b);
// F(q t + a) for q >= 1, 0 <= a < q
Poly restrict_to_progression(const Poly& f, const Int& q, const Int& a);

}  // namespace psmooth
