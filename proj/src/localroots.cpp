#include "psmooth/localroots.hpp"

#include <algorithm>
#include <random>

#include "psmooth/primes.hpp"

namespace psmooth {

namespace {

constexpr u64 kEnumLimit = 1ull << 14;  // below this, roots mod p by scan

// dense polynomial over Z/p, ascending coefficients, no trailing zeros
struct ModPoly {
  u64 p;
  std::vector<u64> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int deg() const { return (int)c.size() - 1; }
  bool zero() const { return c.empty(); }
  u64 lc() const { return c.back(); }

  ModPoly mul(const ModPoly& o) const {
    ModPoly r{p, {}};
    if (zero() || o.zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j)
        r.c[i + j] = addmod(r.c[i + j], mulmod(c[i], o.c[j], p), p);
    r.trim();
    return r;
  }

  // remainder of *this by monic m
  ModPoly rem(const ModPoly& m) const {
    ModPoly r = *this;
    while (!r.zero() && r.deg() >= m.deg()) {
      u64 coef = r.lc();
      size_t shift = (size_t)(r.deg() - m.deg());
      for (size_t i = 0; i < m.c.size(); ++i)
        r.c[i + shift] = submod(r.c[i + shift], mulmod(coef, m.c[i], p), p);
      r.trim();
    }
    return r;
  }

  ModPoly monic() const {
    ModPoly r = *this;
    if (r.zero()) return r;
    u64 inv = invmod(r.lc(), p);
    for (auto& x : r.c) x = mulmod(x, inv, p);
    return r;
  }
};

ModPoly mod_gcd(ModPoly a, ModPoly b) {
  while (!b.zero()) {
    b = b.monic();
    ModPoly r = a.rem(b);
    a = b;
    b = r;
  }
  return a.monic();
}

// base^e mod m, m monic
ModPoly mod_powmod(ModPoly base, u64 e, const ModPoly& m) {
  ModPoly r{m.p, {1}};
  base = base.rem(m);
  while (e) {
    if (e & 1) r = r.mul(base).rem(m);
    base = base.mul(base).rem(m);
    e >>= 1;
  }
  return r;
}

// g: monic squarefree product of distinct linear factors, all roots extracted
void split_linear(const ModPoly& g, std::mt19937_64& rng, std::vector<u64>& out) {
  u64 p = g.p;
  if (g.deg() <= 0) return;
  if (g.deg() == 1) {
    out.push_back(submod(0, g.c[0], p));
    return;
  }
  while (true) {
    u64 a = rng() % p;
    ModPoly shift{p, {a, 1}};
    ModPoly pw = mod_powmod(shift, (p - 1) / 2, g);
    if (pw.zero())
      pw.c = {submod(0, 1, p)};
    else
      pw.c[0] = submod(pw.c[0], 1, p);
    pw.trim();
    ModPoly h = mod_gcd(pw, g);
    if (h.deg() > 0 && h.deg() < g.deg()) {
      // divide g by h
      ModPoly q{p, {}};
      ModPoly r = g;
      q.c.assign((size_t)(g.deg() - h.deg() + 1), 0);
      while (!r.zero() && r.deg() >= h.deg()) {
        u64 coef = r.lc();
        size_t shiftd = (size_t)(r.deg() - h.deg());
        q.c[shiftd] = coef;
        for (size_t i = 0; i < h.c.size(); ++i)
          r.c[i + shiftd] = submod(r.c[i + shiftd], mulmod(coef, h.c[i], p), p);
        r.trim();
      }
      q.trim();
      split_linear(h, rng, out);
      split_linear(q, rng, out);
      return;
    }
  }
}

u64 eval_mod(const std::vector<u64>& cmod, u64 t, u64 m) {
  u64 r = 0;
  for (size_t i = cmod.size(); i-- > 0;) r = addmod(mulmod(r, t, m), cmod[i], m);
  return r;
}

std::vector<u64> reduce_coeffs(const Poly& f, u64 m) {
  std::vector<u64> c;
  c.reserve((size_t)f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i)
    c.push_back(mpz_fdiv_ui(f[(size_t)i].get_mpz_t(), m));
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace

LocalRoots::LocalRoots(Poly f, u64 seed) : f_(std::move(f)), seed_(seed) {
  if (f_.is_zero()) throw domain_error("local roots of zero polynomial");
  fprime_ = f_.derivative();
  disc_ = f_.degree() >= 2 ? discriminant(f_) : Int(f_.degree() == 1 ? 1 : 0);
}

std::vector<u64> LocalRoots::roots_mod_p_nolock(u64 p) {
  auto it = roots_cache_.find(p);
  if (it != roots_cache_.end()) return it->second;
  std::vector<u64> roots;
  std::vector<u64> cmod = reduce_coeffs(f_, p);
  if (cmod.empty()) {
    if (p > kEnumLimit) throw resource_error("polynomial vanishes mod large prime " + std::to_string(p));
    roots.resize(p);
    for (u64 r = 0; r < p; ++r) roots[r] = r;
  } else if (cmod.size() == 1) {
    // nonzero constant mod p
  } else if (p < kEnumLimit) {
    for (u64 r = 0; r < p; ++r)
      if (eval_mod(cmod, r, p) == 0) roots.push_back(r);
  } else {
    ModPoly fb{p, cmod};
    fb = fb.monic();
    ModPoly x{p, {0, 1}};
    ModPoly xp = mod_powmod(x, p, fb);
    // x^p - x mod fb
    if (xp.c.size() < 2) xp.c.resize(2, 0);
    xp.c[1] = submod(xp.c[1], 1, p);
    xp.trim();
    ModPoly g = mod_gcd(xp, fb);
    std::mt19937_64 rng(seed_ ^ (p * 0x9e3779b97f4a7c15ull));
    split_linear(g, rng, roots);
    std::sort(roots.begin(), roots.end());
  }
  roots_cache_[p] = roots;
  return roots;
}

std::vector<u64> LocalRoots::roots_mod_p(u64 p) {
  std::lock_guard<std::mutex> lk(mu_);
  return roots_mod_p_nolock(p);
}

u64 LocalRoots::sigma_p(u64 p) {
  std::lock_guard<std::mutex> lk(mu_);
  return roots_mod_p_nolock(p).size();
}

std::vector<LocalRootLevel> LocalRoots::hensel_nolock(u64 p, unsigned max_level, u64 cap) {
  std::vector<LocalRootLevel> table;
  LocalRootLevel lv1;
  lv1.prime = p;
  lv1.level = 1;
  lv1.modulus = p;
  lv1.roots = roots_mod_p_nolock(p);
  std::vector<u64> fpmod = reduce_coeffs(fprime_, p);
  for (u64 r : lv1.roots) lv1.simple.push_back(eval_mod(fpmod, r, p) != 0);
  table.push_back(std::move(lv1));
  while (table.size() < max_level) {
    const LocalRootLevel& cur = table.back();
    if (cur.modulus > cap / p) throw resource_error("prime power beyond lifting cap");
    LocalRootLevel next;
    next.prime = p;
    next.level = cur.level + 1;
    next.modulus = cur.modulus * p;
    std::vector<u64> cmod = reduce_coeffs(f_, next.modulus);
    std::vector<u64> fpmodM = reduce_coeffs(fprime_, next.modulus);
    for (size_t i = 0; i < cur.roots.size(); ++i) {
      u64 r = cur.roots[i];
      if (cur.simple[i]) {
        u64 fr = eval_mod(cmod, r, next.modulus);
        u64 dr = eval_mod(fpmodM, r, next.modulus);
        u64 lift = submod(r, mulmod(fr, invmod(dr, next.modulus), next.modulus), next.modulus);
        next.roots.push_back(lift);
        next.simple.push_back(true);
      } else {
        for (u64 s = 0; s < p; ++s) {
          u64 cand = r + s * cur.modulus;
          if (eval_mod(cmod, cand, next.modulus) == 0) {
            next.roots.push_back(cand);
            next.simple.push_back(false);
          }
        }
      }
      if (next.roots.size() > kRootListCap) throw resource_error("local root list too large");
    }
    std::vector<std::pair<u64, bool>> order(next.roots.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = {next.roots[i], (bool)next.simple[i]};
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i < order.size(); ++i) {
      next.roots[i] = order[i].first;
      next.simple[i] = order[i].second;
    }
    table.push_back(std::move(next));
  }
  return table;
}

std::vector<LocalRootLevel> LocalRoots::hensel_table(u64 p, unsigned max_level, u64 cap) {
  if (max_level == 0) throw domain_error("hensel_table: level must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  return hensel_nolock(p, max_level, cap);
}

u64 LocalRoots::sigma_pnu_nolock(u64 p, unsigned nu, u64 cap) {
  if (nu == 0) return 1;
  auto key = std::make_pair(p, nu);
  auto it = count_cache_.find(key);
  if (it != count_cache_.end()) return it->second;
  u64 result;
  if (f_.degree() == 0) {
    // constant polynomial: every residue is a root iff p^nu divides it
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, nu);
    if (mpz_divisible_p(f_[0].get_mpz_t(), q.get_mpz_t())) {
      if (!q.fits_ulong_p()) throw resource_error("prime power beyond lifting cap");
      result = q.get_ui();
    } else {
      result = 0;
    }
  } else if (nu == 1) {
    result = roots_mod_p_nolock(p).size();
  } else if (disc_ != 0 && mpz_fdiv_ui(disc_.get_mpz_t(), p) != 0 &&
             mpz_fdiv_ui(f_.lc().get_mpz_t(), p) != 0) {
    // squarefree fiber: every root is simple and lifts uniquely
    result = roots_mod_p_nolock(p).size();
  } else {
    auto table = hensel_nolock(p, nu, cap);
    result = table.back().roots.size();
  }
  count_cache_[key] = result;
  return result;
}

u64 LocalRoots::sigma_pnu(u64 p, unsigned nu, u64 cap) {
  std::lock_guard<std::mutex> lk(mu_);
  return sigma_pnu_nolock(p, nu, cap);
}

u64 LocalRoots::sigma(u64 n, u64 cap) {
  if (n == 0) throw domain_error("sigma: modulus must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  u64 r = 1;
  for (auto [p, e] : factor_u64(n)) r *= sigma_pnu_nolock(p, e, cap);
  return r;
}

Rat LocalRoots::sigma_star(u64 n, u64 cap) {
  if (n == 0) throw domain_error("sigma_star: modulus must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  Rat r(1);
  for (auto [p, e] : factor_u64(n)) {
    u64 lo = sigma_pnu_nolock(p, e, cap);
    u64 hi = sigma_pnu_nolock(p, e + 1, cap);
    Rat term = Rat(lo) - Rat(Int(hi), Int(p));
    term.canonicalize();
    r *= term;
  }
  r.canonicalize();
  return r;
}

Rat LocalRoots::G_of(u64 n) {
  if (n == 0) throw domain_error("G: modulus must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  Rat r(1);
  for (auto [p, e] : factor_u64(n)) {
    (void)e;
    u64 s = roots_mod_p_nolock(p).size();
    if (s >= p) throw domain_error("G undefined: polynomial vanishes mod " + std::to_string(p));
    Rat term = Rat(1) - Rat(Int(s), Int(p));
    term.canonicalize();
    r /= term;
  }
  r.canonicalize();
  return r;
}

std::vector<u64> LocalRoots::root_set(u64 h, u64 cap) {
  if (h == 0) throw domain_error("root_set: modulus must be >= 1");
  std::lock_guard<std::mutex> lk(mu_);
  std::vector<std::pair<u64, u64>> combined{{0, 1}};  // (residue, modulus)
  for (auto [p, e] : factor_u64(h)) {
    auto table = hensel_nolock(p, e, cap);
    const auto& lv = table.back();
    std::vector<std::pair<u64, u64>> merged;
    if (combined.size() * std::max<size_t>(lv.roots.size(), 1) > kRootListCap)
      throw resource_error("root set too large");
    u64 m1 = combined.empty() ? 1 : combined[0].second;
    u64 m2 = lv.modulus;
    u64 inv1 = invmod(m1 % m2, m2);
    for (auto [r1, mm] : combined) {
      (void)mm;
      for (u64 r2 : lv.roots) {
        // b = r1 + m1 * k with k = (r2 - r1)/m1 mod m2
        u64 k = mulmod(submod(r2 % m2, r1 % m2, m2), inv1, m2);
        merged.emplace_back(r1 + m1 * k, m1 * m2);
      }
    }
    combined = std::move(merged);
    if (combined.empty()) break;
  }
  std::vector<u64> out;
  out.reserve(combined.size());
  for (auto [r, m] : combined) {
    (void)m;
    out.push_back(r == 0 ? h : r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 count_roots_mod_p(const Poly& f, u64 p) {
  std::vector<u64> cmod = reduce_coeffs(f, p);
  if (cmod.empty()) return p;
  if (cmod.size() == 1) return 0;
  if (cmod.size() == 2) return 1;
  if (p < kEnumLimit) {
    u64 n = 0;
    for (u64 r = 0; r < p; ++r)
      if (eval_mod(cmod, r, p) == 0) ++n;
    return n;
  }
  ModPoly fb{p, cmod};
  fb = fb.monic();
  ModPoly x{p, {0, 1}};
  ModPoly xp = mod_powmod(x, p, fb);
  if (xp.c.size() < 2) xp.c.resize(2, 0);
  xp.c[1] = submod(xp.c[1], 1, p);
  xp.trim();
  ModPoly g = mod_gcd(xp, fb);
  return g.zero() ? 0 : (u64)g.deg();
}

u64 sigma(const Poly& f, u64 n) { return LocalRoots(f).sigma(n); }
Rat sigma_star(const Poly& f, u64 n) { return LocalRoots(f).sigma_star(n); }
Rat G_of(const Poly& f, u64 n) { return LocalRoots(f).G_of(n); }
std::vector<u64> roots_mod_p(const Poly& f, u64 p) { return LocalRoots(f).roots_mod_p(p); }
std::vector<u64> root_set(const Poly& f, u64 h) { return LocalRoots(f).root_set(h); }

std::vector<u64> root_set_multi(const std::vector<Poly>& fs, const std::vector<u64>& hs) {
  if (fs.size() != hs.size() || fs.empty())
    throw domain_error("root_set_multi: need matching nonempty polynomial and modulus lists");
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j)
      if (gcd_u64(hs[i], hs[j]) != 1) throw domain_error("root_set_multi: moduli must be pairwise coprime");
  u64 H = 1;
  for (u64 h : hs) {
    if (h == 0) throw domain_error("root_set_multi: moduli must be >= 1");
    if (H > (1ull << 62) / h) throw resource_error("combined modulus too large");
    H *= h;
  }
  std::vector<std::pair<u64, u64>> combined{{0, 1}};
  for (size_t i = 0; i < fs.size(); ++i) {
    auto ri = LocalRoots(fs[i]).root_set(hs[i]);
    std::vector<std::pair<u64, u64>> merged;
    if (combined.size() * std::max<size_t>(ri.size(), 1) > kRootListCap)
      throw resource_error("root set too large");
    u64 m1 = combined.empty() ? 1 : combined[0].second;
    u64 m2 = hs[i];
    if (m2 == 1) continue;  // f_i(b) == 0 mod 1 always holds
    u64 inv1 = invmod(m1 % m2, m2);
    for (auto [r1, mm] : combined) {
      (void)mm;
      for (u64 r2 : ri) {
        u64 k = mulmod(submod(r2 % m2, r1 % m2, m2), inv1, m2);
        merged.emplace_back(r1 + m1 * k, m1 * m2);
      }
    }
    combined = std::move(merged);
    if (combined.empty()) break;
  }
  std::vector<u64> out;
  out.reserve(combined.size());
  for (auto [r, m] : combined) {
    (void)m;
    out.push_back(r == 0 ? H : r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalRootLevel> hensel_sigma_table(const Poly& f, u64 p, unsigned max_level) {
  return LocalRoots(f).hensel_table(p, max_level);
}

}  // namespace psmooth
