#include "psmooth/factored.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "psmooth/primes.hpp"
#include "psmooth/real_roots.hpp"

namespace psmooth {

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a[(size_t)i] != b[(size_t)i]) return a[(size_t)i] < b[(size_t)i];
  return false;
}

// ---- arithmetic for polynomials over Z/p with arbitrary precision p ----

using ZpPoly = std::vector<Int>;  // ascending, reduced mod p, no trailing zeros

void zp_trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZpPoly zp_reduce(const Poly& f, const Int& p) {
  ZpPoly r;
  for (int i = 0; i <= f.degree(); ++i) {
    Int c = f[(size_t)i] % p;
    if (c < 0) c += p;
    r.push_back(c);
  }
  zp_trim(r);
  return r;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  zp_trim(r);
  return r;
}

ZpPoly zp_monic(ZpPoly a, const Int& p) {
  if (a.empty()) return a;
  Int inv;
  mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
  for (auto& c : a) c = c * inv % p;
  return a;
}

// remainder by monic m
ZpPoly zp_rem(ZpPoly a, const ZpPoly& m, const Int& p) {
  while (a.size() >= m.size() && !a.empty()) {
    Int coef = a.back();
    size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      a[i + shift] = (a[i + shift] - coef * m[i]) % p;
      if (a[i + shift] < 0) a[i + shift] += p;
    }
    zp_trim(a);
  }
  return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, const Int& p) {
  while (!b.empty()) {
    b = zp_monic(b, p);
    ZpPoly r = zp_rem(a, b, p);
    a = b;
    b = r;
  }
  return zp_monic(a, p);
}

// x^e mod m for monic m
ZpPoly zp_pow_x(const Int& e, const ZpPoly& m, const Int& p) {
  ZpPoly result{Int(1)};
  ZpPoly base = zp_rem({Int(0), Int(1)}, m, p);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = zp_rem(zp_mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = zp_rem(zp_mul(result, base, p), m, p);
  }
  return result;
}

// do f and g share a root modulo the prime p
bool share_root_mod(const Poly& f, const Poly& g, const Int& p) {
  ZpPoly fa = zp_reduce(f, p), gb = zp_reduce(g, p);
  if (fa.empty() || gb.empty()) return true;  // one vanishes identically mod p
  ZpPoly h = zp_gcd(fa, gb, p);
  if (h.size() <= 1) return false;
  if (h.size() == 2) return true;
  // common part may lack linear factors: intersect with x^p - x
  ZpPoly xp = zp_pow_x(p, h, p);
  if (xp.size() < 2) xp.resize(2, Int(0));
  xp[1] = (xp[1] - 1) % p;
  if (xp[1] < 0) xp[1] += p;
  zp_trim(xp);
  ZpPoly lin = zp_gcd(xp, h, p);
  return lin.size() >= 2;
}

}  // namespace

FactoredPoly FactoredPoly::from_poly(const Poly& f) {
  if (f.is_zero()) throw domain_error("zero polynomial is not representable in factored form");
  FactoredPoly F;
  F.sign = sgn(f.lc());
  F.content = f.content();
  if (f.degree() >= 1) {
    Poly prim = f.divexact(F.sign > 0 ? F.content : -F.content);
    F.factors.emplace_back(prim, 1);
  }
  F.normalize();
  return F;
}

void FactoredPoly::normalize() {
  if (content == 0) throw domain_error("factored polynomial cannot have zero content");
  if (content < 0) {
    content = -content;
    sign = -sign;
  }
  if (sign != 1 && sign != -1) throw domain_error("sign must be +1 or -1");
  std::vector<std::pair<Poly, unsigned>> out;
  for (auto& [g, m] : factors) {
    if (m == 0) continue;
    if (g.is_zero()) throw domain_error("zero factor");
    if (g.degree() == 0) throw domain_error("constant factor; fold it into the content");
    Poly gg = g;
    Int c = gg.content();
    if (c != 1) {
      Int cm;
      mpz_pow_ui(cm.get_mpz_t(), c.get_mpz_t(), m);
      content *= cm;
      gg = gg.divexact(c);
    }
    if (gg.lc() < 0) {
      gg = -gg;
      if (m % 2 == 1) sign = -sign;
    }
    out.emplace_back(std::move(gg), m);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  factors.clear();
  for (auto& [g, m] : out) {
    if (!factors.empty() && factors.back().first == g)
      factors.back().second += m;
    else
      factors.emplace_back(std::move(g), m);
  }
}

void FactoredPoly::validate() const {
  if (sign != 1 && sign != -1) throw domain_error("sign must be +1 or -1");
  if (content < 1) throw domain_error("content must be a positive integer");
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& [g, m] = factors[i];
    if (m < 1) throw domain_error("factor multiplicity must be >= 1");
    if (g.degree() < 1) throw domain_error("factors must have degree >= 1");
    if (g.lc() < 0) throw domain_error("factors must have positive leading coefficient");
    if (g.content() != 1) throw domain_error("factors must be primitive");
    for (size_t j = i + 1; j < factors.size(); ++j)
      if (g == factors[j].first) throw domain_error("repeated factor; merge multiplicities");
  }
}

Poly FactoredPoly::expand() const {
  Poly r = Poly::constant(sign > 0 ? content : -content);
  for (const auto& [g, m] : factors)
    for (unsigned i = 0; i < m; ++i) r = r * g;
  return r;
}

Int FactoredPoly::eval(const Int& t) const {
  Int r = sign > 0 ? content : -content;
  for (const auto& [g, m] : factors) {
    Int v = g.eval(t);
    Int vm;
    mpz_pow_ui(vm.get_mpz_t(), v.get_mpz_t(), m);
    r *= vm;
  }
  return r;
}

int FactoredPoly::degree() const {
  int d = 0;
  for (const auto& [g, m] : factors) d += g.degree() * (int)m;
  return d;
}

int FactoredPoly::max_factor_degree() const {
  int d = 0;
  for (const auto& fm : factors) d = std::max(d, fm.first.degree());
  return d;
}

unsigned FactoredPoly::count_max_degree() const {
  int d = max_factor_degree();
  unsigned k = 0;
  for (const auto& fm : factors)
    if (fm.first.degree() == d) ++k;
  return k;
}

bool FactoredPoly::operator==(const FactoredPoly& o) const {
  return sign == o.sign && content == o.content && factors == o.factors;
}

FactoredPoly parse_factored(const std::string& text) {
  size_t lb = text.find('[');
  if (lb == std::string::npos) return FactoredPoly::from_poly(parse_poly(text));
  size_t rb = text.rfind(']');
  if (rb == std::string::npos || rb < lb) throw domain_error("factored parse: missing ']'");
  FactoredPoly F;
  // prefix: optional sign and content joined by '*', e.g. "-1*6*"
  std::string prefix = text.substr(0, lb);
  Int m = 1;
  std::string tok;
  std::stringstream ps(prefix);
  while (std::getline(ps, tok, '*')) {
    size_t a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = tok.find_last_not_of(" \t");
    tok = tok.substr(a, b - a + 1);
    if (tok == "+")
      continue;
    else if (tok == "-")
      m = -m;
    else {
      for (size_t j = 0; j < tok.size(); ++j)
        if (!(std::isdigit((unsigned char)tok[j]) || (j == 0 && (tok[j] == '+' || tok[j] == '-'))))
          throw domain_error("factored parse: bad prefix term '" + tok + "'");
      m *= Int(tok);
    }
  }
  if (m == 0) throw domain_error("factored parse: zero content");
  F.sign = m < 0 ? -1 : 1;
  F.content = abs(m);
  std::string inner = text.substr(lb + 1, rb - lb - 1);
  std::stringstream fs(inner);
  std::string entry;
  while (std::getline(fs, entry, ';')) {
    size_t a = entry.find_first_not_of(" \t");
    if (a == std::string::npos) throw domain_error("factored parse: empty factor");
    size_t b = entry.find_last_not_of(" \t");
    entry = entry.substr(a, b - a + 1);
    unsigned mult = 1;
    // multiplicity suffix is only recognized after a dense-form factor: (...)^m
    size_t close = entry.rfind(')');
    if (close != std::string::npos && close + 1 < entry.size()) {
      std::string suffix = entry.substr(close + 1);
      if (suffix.size() < 2 || suffix[0] != '^')
        throw domain_error("factored parse: bad factor suffix '" + suffix + "'");
      for (size_t j = 1; j < suffix.size(); ++j)
        if (!std::isdigit((unsigned char)suffix[j]))
          throw domain_error("factored parse: bad multiplicity '" + suffix + "'");
      long v = std::stol(suffix.substr(1));
      if (v < 1 || v > 64) throw domain_error("factored parse: multiplicity out of range");
      mult = (unsigned)v;
      entry = entry.substr(0, close + 1);
    }
    Poly g = parse_poly(entry);
    if (g.is_zero() || g.degree() < 1)
      throw domain_error("factored parse: factors must have degree >= 1");
    if (g.content() != 1)
      throw domain_error("factored parse: declared factor is not primitive: " + entry);
    F.factors.emplace_back(std::move(g), mult);
  }
  if (F.factors.empty()) throw domain_error("factored parse: no factors inside [ ]");
  F.normalize();
  F.validate();
  return F;
}

std::string to_string(const FactoredPoly& F) {
  std::ostringstream out;
  if (F.sign < 0) out << "-1*";
  if (F.content != 1 || F.factors.empty()) {
    out << F.content.get_str();
    if (!F.factors.empty()) out << '*';
  }
  if (!F.factors.empty()) {
    out << '[';
    bool first = true;
    for (const auto& [g, m] : F.factors) {
      if (!first) out << ';';
      out << to_dense_string(g);
      if (m > 1) out << '^' << m;
      first = false;
    }
    out << ']';
  }
  return out.str();
}

StructuralReport structural_report(const FactoredPoly& F) {
  F.validate();
  StructuralReport rep;
  Poly E = F.expand();
  int D = F.degree();

  rep.squarefree = true;
  for (const auto& [g, m] : F.factors) {
    if (m > 1) {
      rep.squarefree = false;
      rep.witness["squarefree"] = "factor " + to_string(g) + " has multiplicity " + std::to_string(m);
      break;
    }
  }
  if (rep.squarefree && D >= 1 && !is_squarefree(E)) {
    rep.squarefree = false;
    rep.witness["squarefree"] = "gcd(F, F') has positive degree";
  }

  rep.primitive = (F.content == 1);
  if (!rep.primitive) rep.witness["primitive"] = "content " + F.content.get_str();

  rep.balanced = true;
  if (F.factors.empty()) {
    rep.balanced = false;
    rep.witness["balanced"] = "no polynomial factors";
  } else if (F.sign != 1) {
    rep.balanced = false;
    rep.witness["balanced"] = "negative sign";
  } else if (F.content != 1) {
    rep.balanced = false;
    rep.witness["balanced"] = "content " + F.content.get_str();
  } else {
    int d = F.max_factor_degree();
    for (const auto& [g, m] : F.factors) {
      if (m > 1) {
        rep.balanced = false;
        rep.witness["balanced"] = "factor " + to_string(g) + " has multiplicity " + std::to_string(m);
        break;
      }
      if (g.degree() != d) {
        rep.balanced = false;
        rep.witness["balanced"] = "factor degrees differ";
        break;
      }
    }
  }

  rep.effective = !F.factors.empty();
  if (F.factors.empty()) rep.witness["effective"] = "no polynomial factors";
  for (const auto& [g, m] : F.factors) {
    (void)m;
    if (!rep.effective) break;
    if (g.eval(Int(0)) < 2) {
      rep.effective = false;
      rep.witness["effective"] = to_string(g) + "(0) < 2";
    } else if (!nonneg_on_ray(g.derivative() - Poly::constant(1), Rat(0))) {
      rep.effective = false;
      rep.witness["effective"] = to_string(g) + "' dips below 1 on t >= 0";
    }
  }

  rep.admissible = true;
  if (F.content != 1) {
    rep.admissible = false;
    Int p = factor_int(F.content).front().first;
    rep.witness["admissible"] = "prime " + p.get_str() + " divides the content";
  } else {
    for (int p = 2; p <= D; ++p) {
      bool isp = true;
      for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) isp = false;
      if (!isp) continue;
      unsigned roots = 0;
      for (int r = 0; r < p; ++r)
        if (mpz_fdiv_ui(E.eval(Int(r)).get_mpz_t(), (unsigned long)p) == 0) ++roots;
      if (roots == (unsigned)p) {
        rep.admissible = false;
        rep.witness["admissible"] = "all residues mod " + std::to_string(p) + " are roots";
        break;
      }
    }
  }

  rep.exclusive = true;
  for (size_t i = 0; i < F.factors.size() && rep.exclusive; ++i) {
    for (size_t j = i + 1; j < F.factors.size() && rep.exclusive; ++j) {
      const Poly& a = F.factors[i].first;
      const Poly& b = F.factors[j].first;
      Int res = resultant(a, b);
      if (res == 0) {
        rep.exclusive = false;
        rep.witness["exclusive"] = to_string(a) + " and " + to_string(b) + " share a factor";
        break;
      }
      if (res == 1 || res == -1) continue;
      for (const auto& [p, e] : factor_int(res)) {
        (void)e;
        if (share_root_mod(a, b, p)) {
          rep.exclusive = false;
          rep.witness["exclusive"] =
              to_string(a) + " and " + to_string(b) + " share a root mod " + p.get_str();
          break;
        }
      }
    }
  }
  return rep;
}

Int compute_Q(const FactoredPoly& F) {
  F.validate();
  if (F.degree() < 1) throw domain_error("Q needs at least one polynomial factor");
  for (const auto& [g, m] : F.factors) {
    (void)g;
    if (m > 1) throw domain_error("Q requires a squarefree polynomial");
  }
  Poly E = F.expand();
  if (!is_squarefree(E)) throw domain_error("Q requires a squarefree polynomial");
  int D = E.degree();
  Int disc = discriminant(E);
  Int Q = 1;
  for (int p = 2; p <= D; ++p) {
    bool isp = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) isp = false;
    if (!isp) continue;
    Int pm((long)p);
    Int tmp;
    unsigned long ord = mpz_remove(tmp.get_mpz_t(), disc.get_mpz_t(), pm.get_mpz_t());
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), pm.get_mpz_t(), ord + 1);
    Q *= pe;
  }
  for (size_t i = 0; i < F.factors.size(); ++i) {
    for (size_t j = i + 1; j < F.factors.size(); ++j) {
      Int res = resultant(F.factors[i].first, F.factors[j].first);
      for (const auto& [p, e] : factor_int(res)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e + 1);
        Q *= pe;
      }
    }
  }
  return Q;
}

FactoredPoly salvage(const FactoredPoly& F, const Int& a) {
  if (a < 0) throw domain_error("salvage: shift must be >= 0");
  Int Q = compute_Q(F);
  FactoredPoly out;
  out.sign = F.sign;
  out.content = 1;
  for (const auto& [g, m] : F.factors) out.factors.emplace_back(g.compose_linear(Q, a), m);
  out.normalize();
  out.content = 1;  // factors are primitivized, their contents discarded
  out.validate();
  return out;
}

std::pair<FactoredPoly, Int> make_effective_balanced(const FactoredPoly& F, double alpha) {
  F.validate();
  if (F.factors.empty()) throw domain_error("no polynomial factors");
  int d = F.max_factor_degree();
  if (!(alpha > d - 1))
    throw domain_error("exponent must exceed max factor degree minus one");
  FactoredPoly base;
  base.sign = 1;
  base.content = 1;
  for (const auto& [g, m] : F.factors) {
    (void)m;
    if (g.degree() == d) base.factors.emplace_back(g, 1);
  }
  Poly one = Poly::constant(1);
  for (Int t0 = 0; t0 < 1000000; ++t0) {
    bool ok = true;
    for (const auto& [g, m] : base.factors) {
      (void)m;
      if (g.eval(t0) < 2 || !nonneg_on_ray(g.derivative() - one, Rat(t0))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      FactoredPoly shifted;
      shifted.sign = 1;
      shifted.content = 1;
      for (const auto& [g, m] : base.factors) shifted.factors.emplace_back(g.shifted(t0), m);
      shifted.normalize();
      shifted.validate();
      return {shifted, t0};
    }
  }
  throw resource_error("no admissible shift below 10^6");
}

FactoredPoly fhb_transform(const FactoredPoly& f, const Int& h, const Int& b) {
  if (h < 1) throw domain_error("fhb_transform: h must be >= 1");
  Int fb = f.eval(b);
  if (!mpz_divisible_p(fb.get_mpz_t(), h.get_mpz_t()))
    throw domain_error("fhb_transform: " + h.get_str() + " does not divide f(" + b.get_str() +
                       ") = " + fb.get_str());
  FactoredPoly out;
  out.sign = f.sign;
  Int num = f.content;
  for (const auto& [g, m] : f.factors) {
    Poly tg = g.compose_linear(h, b);
    Int c = tg.content();
    Int cm;
    mpz_pow_ui(cm.get_mpz_t(), c.get_mpz_t(), m);
    num *= cm;
    out.factors.emplace_back(tg.divexact(c), m);
  }
  if (!mpz_divisible_p(num.get_mpz_t(), h.get_mpz_t()))
    throw domain_error("fhb_transform: content bookkeeping failed");
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), h.get_mpz_t());
  out.content = num;
  out.normalize();
  out.validate();
  return out;
}

FactoredPoly restrict_to_progression(const FactoredPoly& F, const Int& q, const Int& a) {
  if (q < 1) throw domain_error("restrict_to_progression: q must be >= 1");
  if (a < 0 || a >= q) throw domain_error("restrict_to_progression: a must lie in [0, q)");
  FactoredPoly out;
  out.sign = F.sign;
  out.content = F.content;
  for (const auto& [g, m] : F.factors) out.factors.emplace_back(g.compose_linear(q, a), m);
  out.normalize();
  out.validate();
  return out;
}

}  // namespace psmooth
