#include "psmooth/real_roots.hpp"

#include <algorithm>

namespace psmooth {

namespace {

Poly squarefree_part(const Poly& f) {
  if (f.degree() <= 0) return f;
  Poly g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) return f.primitive_part();
  // exact division f / g via rational long division
  std::vector<Rat> r(f.coeffs().begin(), f.coeffs().end());
  std::vector<Rat> q((size_t)(f.degree() - g.degree() + 1));
  for (int k = f.degree() - g.degree(); k >= 0; --k) {
    Rat c = r[(size_t)(k + g.degree())] / Rat(g.lc());
    q[(size_t)k] = c;
    for (int i = 0; i <= g.degree(); ++i) r[(size_t)(k + i)] -= c * Rat(g[(size_t)i]);
  }
  std::vector<Int> out;
  out.reserve(q.size());
  Int den_lcm = 1;
  for (auto& c : q) {
    c.canonicalize();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  for (auto& c : q) out.push_back(Int(c * Rat(den_lcm)));
  Poly sf = Poly(std::move(out)).primitive_part();
  if (sf.lc() < 0) sf = -sf;
  return sf;
}

// divide out a known rational root p/q in lowest terms
Poly deflate_root(const Poly& f, const Rat& root) {
  Poly lin(std::vector<Int>{-root.get_num(), root.get_den()});
  std::vector<Rat> r(f.coeffs().begin(), f.coeffs().end());
  std::vector<Rat> q((size_t)f.degree());
  for (int k = f.degree() - 1; k >= 0; --k) {
    Rat c = r[(size_t)(k + 1)] / Rat(lin.lc());
    q[(size_t)k] = c;
    for (int i = 0; i <= 1; ++i) r[(size_t)(k + i)] -= c * Rat(lin[(size_t)i]);
  }
  std::vector<Int> out;
  for (auto& c : q) {
    c.canonicalize();
    if (c.get_den() != 1) throw domain_error("deflate_root: division not exact");
    out.push_back(c.get_num());
  }
  return Poly(std::move(out));
}

// chain s0=f, s1=f', s_{k+1} = -(s_{k-1} mod s_k) up to positive factors
struct SturmChain {
  std::vector<Poly> seq;

  static SturmChain build(const Poly& f) {
    SturmChain ch;
    ch.seq.push_back(f);
    if (f.degree() >= 1) ch.seq.push_back(f.derivative());
    while (ch.seq.back().degree() >= 1) {
      const Poly& a = ch.seq[ch.seq.size() - 2];
      const Poly& b = ch.seq.back();
      int delta = a.degree() - b.degree();
      Poly r = a;
      {
        int e = delta + 1;
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
      }
      if (b.lc() < 0 && (delta + 1) % 2 == 1) r = -r;  // keep the mod-b sign
      if (r.is_zero()) break;
      Poly next = -(r.divexact(r.content()));
      ch.seq.push_back(next);
    }
    return ch;
  }

  int variations_at(const Rat& x) const {
    int var = 0, prev = 0;
    for (const auto& s : seq) {
      Rat v = s.eval(x);
      int sg = sgn(v);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++var;
      prev = sg;
    }
    return var;
  }
};

}  // namespace

Rat cauchy_bound(const Poly& f) {
  if (f.degree() < 1) return Rat(1);
  Rat m(0);
  for (int i = 0; i < f.degree(); ++i) {
    Rat c(abs(f[(size_t)i]), abs(f.lc()));
    c.canonicalize();
    if (c > m) m = c;
  }
  return m + 2;
}

namespace {

// isolating intervals (lo, hi] for all distinct roots in (a, b], f squarefree, f(a),f(b) != 0
void isolate(const Poly& f, const SturmChain& ch, const Rat& a, const Rat& b, int count,
             std::vector<std::pair<Rat, Rat>>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.emplace_back(a, b);
    return;
  }
  Rat m = (a + b) / 2;
  int left = ch.variations_at(a) - ch.variations_at(m);
  isolate(f, ch, a, m, left, out);
  isolate(f, ch, m, b, count - left, out);
}

}  // namespace

int count_roots_in(const Poly& f, const Rat& a, const Rat& b) {
  if (f.is_zero()) throw domain_error("root count of zero polynomial");
  if (b <= a) return 0;
  Poly sf = squarefree_part(f);
  if (sf.degree() < 1) return 0;
  while (sf.eval(a) == 0) sf = deflate_root(sf, a);
  if (sf.degree() < 1) return 0;
  SturmChain ch = SturmChain::build(sf);
  return ch.variations_at(a) - ch.variations_at(b);
}

int count_roots_gt(const Poly& f, const Rat& a) {
  if (f.is_zero()) throw domain_error("root count of zero polynomial");
  Poly sf = squarefree_part(f);
  if (sf.degree() < 1) return 0;
  Rat b = cauchy_bound(sf);
  if (b <= a) return 0;
  return count_roots_in(sf, a, b);
}

bool nonneg_on_ray(const Poly& f, const Rat& a) {
  if (f.is_zero()) return true;
  if (f.eval(a) < 0) return false;
  if (f.degree() == 0) return f.lc() > 0;
  if (f.lc() < 0) return false;
  Poly sf = squarefree_part(f);
  while (sf.degree() >= 1 && sf.eval(a) == 0) sf = deflate_root(sf, a);
  if (sf.degree() < 1) return true;
  Rat b = cauchy_bound(f);
  if (b <= a) return true;
  SturmChain ch = SturmChain::build(sf);
  int n = ch.variations_at(a) - ch.variations_at(b);
  if (n == 0) return true;
  std::vector<std::pair<Rat, Rat>> iv;
  isolate(sf, ch, a, b, n, iv);
  // shrink leading interval away from a, then test a sample in every gap
  while (iv[0].first == a) {
    Rat m = (iv[0].first + iv[0].second) / 2;
    if (ch.variations_at(a) - ch.variations_at(m) == 1)
      iv[0].second = m;
    else
      iv[0].first = m;
  }
  std::vector<Rat> samples;
  samples.push_back((a + iv[0].first) / 2);
  for (size_t i = 0; i + 1 < iv.size(); ++i) samples.push_back((iv[i].second + iv[i + 1].first) / 2);
  samples.push_back(b);
  for (const auto& s : samples)
    if (f.eval(s) < 0) return false;
  return true;
}

std::vector<double> real_roots_in(const Poly& f, const Rat& lo, const Rat& hi) {
  std::vector<double> roots;
  if (f.is_zero() || f.degree() < 1 || hi <= lo) return roots;
  Poly sf = squarefree_part(f);
  while (sf.degree() >= 1 && sf.eval(lo) == 0) sf = deflate_root(sf, lo);
  while (sf.degree() >= 1 && sf.eval(hi) == 0) sf = deflate_root(sf, hi);
  if (sf.degree() < 1) return roots;
  SturmChain ch = SturmChain::build(sf);
  int n = ch.variations_at(lo) - ch.variations_at(hi);
  if (n == 0) return roots;
  std::vector<std::pair<Rat, Rat>> iv;
  isolate(sf, ch, lo, hi, n, iv);
  for (auto& [l, r] : iv) {
    // bisect to double precision
    for (int it = 0; it < 80; ++it) {
      Rat m = (l + r) / 2;
      double w = Rat(r - l).get_d();
      double scale = std::max(1.0, std::abs(m.get_d()));
      if (w <= scale * 1e-14) break;
      if (ch.variations_at(l) - ch.variations_at(m) == 1)
        r = m;
      else
        l = m;
    }
    double root = Rat((l + r) / 2).get_d();
    double lo_d = lo.get_d(), hi_d = hi.get_d();
    if (root > lo_d && root < hi_d) roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace psmooth
