#include "psmooth/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace psmooth {

const Int Poly::zero_ = 0;

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(Int v) {
  std::vector<Int> c;
  if (v != 0) c.push_back(std::move(v));
  return Poly(std::move(c));
}

Poly Poly::monomial(Int coeff, unsigned k) {
  if (coeff == 0) return Poly();
  std::vector<Int> c(k + 1, Int(0));
  c[k] = std::move(coeff);
  return Poly(std::move(c));
}

const Int& Poly::operator[](size_t i) const {
  return i < c_.size() ? c_[i] : zero_;
}

const Int& Poly::lc() const {
  if (c_.empty()) throw domain_error("lc of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator-() const {
  std::vector<Int> r(c_);
  for (auto& x : r) x = -x;
  return Poly(std::move(r));
}

Poly Poly::scaled(const Int& s) const {
  if (s == 0) return Poly();
  std::vector<Int> r(c_);
  for (auto& x : r) x *= s;
  return Poly(std::move(r));
}

Poly Poly::divexact(const Int& s) const {
  if (s == 0) throw domain_error("division by zero");
  std::vector<Int> r(c_);
  for (auto& x : r) {
    if (!mpz_divisible_p(x.get_mpz_t(), s.get_mpz_t()))
      throw domain_error("coefficient division not exact");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
  }
  return Poly(std::move(r));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Int> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * (long)i;
  return Poly(std::move(r));
}

Int Poly::eval(const Int& t) const {
  Int r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
  return r;
}

Rat Poly::eval(const Rat& t) const {
  Rat r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + Rat(c_[i]);
  return r;
}

double Poly::eval_double(double t) const {
  double r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i].get_d();
  return r;
}

Int Poly::content() const {
  Int g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Poly Poly::primitive_part() const {
  if (is_zero()) throw domain_error("primitive part of zero polynomial");
  return divexact(content());
}

Poly Poly::compose_linear(const Int& a, const Int& b) const {
  Poly lin(std::vector<Int>{b, a});
  Poly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + Poly::constant(c_[i]);
  return r;
}

namespace {

// lc(b)^(deg a - deg b + 1) * a = q*b + rem, deg rem < deg b
Poly pseudo_rem(const Poly& a, const Poly& b) {
  int e = a.degree() - b.degree() + 1;
  Poly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly t = Poly::monomial(r.lc(), (unsigned)(r.degree() - b.degree()));
    r = r.scaled(b.lc()) - t * b;
    --e;
  }
  if (e > 0) {
    Int s;
    mpz_pow_ui(s.get_mpz_t(), b.lc().get_mpz_t(), (unsigned long)e);
    r = r.scaled(s);
  }
  return r;
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

// subresultant PRS, exact over Z
Int resultant(const Poly& a0, const Poly& b0) {
  if (a0.is_zero() || b0.is_zero()) return 0;
  if (a0.degree() == 0 && b0.degree() == 0) return 1;
  Poly a = a0, b = b0;
  int sign = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    std::swap(a, b);
  }
  Int ca = a.content(), cb = b.content();
  Int lead = ipow(ca, (unsigned long)b.degree()) * ipow(cb, (unsigned long)a.degree());
  a = a.divexact(ca);
  b = b.divexact(cb);
  if (b.degree() == 0)  // primitive constant is +-1
    return sign * lead * ipow(b.lc(), (unsigned long)a.degree());
  Int g = 1, h = 1;
  while (true) {
    int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    Poly r = pseudo_rem(a, b);
    a = b;
    Int div = g * ipow(h, (unsigned long)delta);
    b = r.divexact(div);
    g = a.lc();
    if (delta > 0) {
      Int gd = ipow(g, (unsigned long)delta);
      if (delta == 1)
        h = gd;
      else {
        Int hd = ipow(h, (unsigned long)(delta - 1));
        mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
      }
    }
    if (b.is_zero()) return 0;
    if (b.degree() == 0) {
      int dd = a.degree();
      Int num = ipow(b.lc(), (unsigned long)dd);
      Int res;
      if (dd >= 1) {
        Int den = ipow(h, (unsigned long)(dd - 1));
        mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      } else {
        res = 1;
      }
      return sign * lead * res;
    }
  }
}

Int discriminant(const Poly& f) {
  int d = f.degree();
  if (d < 1) throw domain_error("discriminant needs degree >= 1");
  if (d == 1) return 1;
  Int res = resultant(f, f.derivative());
  Int disc;
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
  if (((long)d * (d - 1) / 2) % 2 != 0) disc = -disc;
  return disc;
}

Poly poly_gcd(const Poly& a0, const Poly& b0) {
  if (a0.is_zero()) return b0.is_zero() ? Poly() : b0.scaled(sgn(b0.lc()));
  if (b0.is_zero()) return a0.scaled(sgn(a0.lc()));
  Int cg;
  mpz_gcd(cg.get_mpz_t(), a0.content().get_mpz_t(), b0.content().get_mpz_t());
  Poly a = a0.primitive_part(), b = b0.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = pseudo_rem(a, b);
    a = b;
    b = r.is_zero() ? Poly() : r.primitive_part();
  }
  Poly g = a.scaled(cg);
  if (g.lc() < 0) g = -g;
  return g;
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) return false;
  if (f.degree() == 0) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

Poly fhb_transform(const Poly& f, const Int& h, const Int& b) {
  if (h < 1) throw domain_error("fhb_transform: h must be >= 1");
  Int fb = f.eval(b);
  if (!mpz_divisible_p(fb.get_mpz_t(), h.get_mpz_t()))
    throw domain_error("fhb_transform: " + h.get_str() + " does not divide f(" + b.get_str() +
                       ") = " + fb.get_str());
  return f.compose_linear(h, b).divexact(h);
}

Poly restrict_to_progression(const Poly& f, const Int& q, const Int& a) {
  if (q < 1) throw domain_error("restrict_to_progression: q must be >= 1");
  if (a < 0 || a >= q) throw domain_error("restrict_to_progression: a must lie in [0, q)");
  return f.compose_linear(q, a);
}

namespace {

struct TermParser {
  const std::string& s;
  size_t i = 0;
  explicit TermParser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }

  bool eof() {
    skip_ws();
    return i >= s.size();
  }

  Int parse_int() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) {
      ++i;
      ++digits;
    }
    if (digits == 0) throw domain_error("polynomial parse: expected integer near '" + s.substr(start, 8) + "'");
    return Int(s.substr(start, i - start));
  }

  // coefficient-and-power term like 3, t, -t, 2*t^3, t^2
  std::pair<Int, unsigned> parse_term() {
    skip_ws();
    Int coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && (std::isdigit((unsigned char)s[i]))) {
      coeff = parse_int();
      have_coeff = true;
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      } else if (i < s.size() && s[i] == 't') {
        // implicit product like 2t
      } else {
        return {coeff, 0};
      }
    }
    skip_ws();
    if (i < s.size() && s[i] == 't') {
      ++i;
      skip_ws();
      unsigned k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        Int e = parse_int();
        if (e < 0 || e > 64) throw domain_error("polynomial parse: exponent out of range");
        k = (unsigned)e.get_ui();
      }
      return {coeff, k};
    }
    if (have_coeff) return {coeff, 0};
    throw domain_error("polynomial parse: unexpected character near '" + s.substr(i, 8) + "'");
  }
};

Poly parse_human(const std::string& text) {
  TermParser p(text);
  std::vector<Int> coeffs;
  bool first = true;
  while (!p.eof()) {
    int sign = 1;
    p.skip_ws();
    if (p.s[p.i] == '+' || p.s[p.i] == '-') {
      if (p.s[p.i] == '-') sign = -1;
      ++p.i;
    } else if (!first) {
      throw domain_error("polynomial parse: expected '+' or '-' near '" + text.substr(p.i, 8) + "'");
    }
    auto [coeff, k] = p.parse_term();
    if (coeffs.size() < k + 1) coeffs.resize(k + 1, Int(0));
    coeffs[k] += sign * coeff;
    first = false;
  }
  if (first) throw domain_error("polynomial parse: empty input");
  return Poly(std::move(coeffs));
}

Poly parse_dense(const std::string& text) {
  size_t close = text.rfind(')');
  if (close == std::string::npos) throw domain_error("polynomial parse: missing ')'");
  std::string inner = text.substr(text.find('(') + 1, close - text.find('(') - 1);
  std::vector<Int> coeffs;
  std::stringstream ss(inner);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw domain_error("polynomial parse: empty coefficient");
    tok = tok.substr(a, b - a + 1);
    for (size_t j = 0; j < tok.size(); ++j) {
      bool ok = std::isdigit((unsigned char)tok[j]) || (j == 0 && (tok[j] == '-' || tok[j] == '+'));
      if (!ok) throw domain_error("polynomial parse: bad coefficient '" + tok + "'");
    }
    coeffs.emplace_back(tok);
    any = true;
  }
  if (!any && !inner.empty()) throw domain_error("polynomial parse: bad coefficient list");
  return Poly(std::move(coeffs));
}

}  // namespace

Poly parse_poly(const std::string& text) {
  size_t a = text.find_first_not_of(" \t");
  if (a == std::string::npos) throw domain_error("polynomial parse: empty input");
  if (text[a] == '(') return parse_dense(text);
  return parse_human(text);
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = f.degree(); k >= 0; --k) {
    const Int& c = f[(size_t)k];
    if (c == 0) continue;
    Int a = abs(c);
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? '-' : '+');
    }
    if (k == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << '*';
      out << 't';
      if (k > 1) out << '^' << k;
    }
  }
  return out.str();
}

std::string to_dense_string(const Poly& f) {
  std::ostringstream out;
  out << '(';
  if (f.is_zero()) {
    out << '0';
  } else {
    for (int i = 0; i <= f.degree(); ++i) {
      if (i) out << ',';
      out << f[(size_t)i].get_str();
    }
  }
  out << ')';
  return out.str();
}

}  // namespace psmooth
