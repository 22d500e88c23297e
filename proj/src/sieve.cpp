#include "psmooth/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <vector>

#include "psmooth/li.hpp"
#include "psmooth/localroots.hpp"
#include "psmooth/singular.hpp"

namespace psmooth {

namespace {

u64 normalize_residue(u64 q, i64 a) {
  i64 m = (i64)q;
  return (u64)(((a % m) + m) % m);
}

// count of 1 <= n <= x with n = r (mod q)
u64 count_ap_all(u64 x, u64 q, u64 r) {
  if (r == 0) return x / q;
  return r <= x ? (x - r) / q + 1 : 0;
}

// v has no prime factor <= pmax; decide whether all its factors are <= y
bool residual_smooth_u64(u64 v, u64 y, u64 pmax) {
  if (v == 1) return true;
  if (v <= y) return true;
  if (pmax >= y) return false;
  if (is_prime_u64(v)) return false;
  for (const auto& [p, e] : factor_u64(v)) {
    (void)e;
    if (p > y) return false;
  }
  return true;
}

enum : unsigned char { kSmooth = 0, kZeroVal = 1, kRough = 2 };

// sieving machinery for the values |g(n)|, 1 <= n <= x: divide out primes
// p <= pmax along the root progressions of g, then settle each residual
struct FactorSieve {
  Poly g;
  bool fits = false;     // all values over [1, x] fit below 2^63
  std::vector<i64> ci;   // coefficients when fits
  std::vector<std::pair<u64, u64>> progs;  // (p, root mod p)
  std::vector<u64> stage2;                 // primes in (pmax, y], mpz path only
  u64 pmax = 0;

  void prepare(const Poly& gin, u64 x, u64 y, u64 pm, Workspace& ws) {
    g = gin;
    pmax = pm;
    Int bound = 0, xp = 1;
    for (int i = 0; i <= g.degree(); ++i) {
      bound += abs(g[i]) * xp;
      xp *= (unsigned long)x;
    }
    fits = mpz_sizeinbase(bound.get_mpz_t(), 2) <= 63;
    if (fits)
      for (int i = 0; i <= g.degree(); ++i) ci.push_back(g[i].get_si());
    if (pmax >= 2) {
      auto pt = ws.primes(pmax);
      pt->for_each_prime(2, pmax, [&](u64 p) {
        for (u64 r : roots_mod_p(g, p)) progs.emplace_back(p, r);
      });
    }
    if (!fits && y > pmax) stage2 = ws.primes(y)->primes_in(pmax + 1, y);
  }

  void values_u64(u64 lo, u64 hi, std::vector<u64>& vals) const {
    vals.resize(hi - lo);
    for (u64 n = lo; n < hi; ++n) {
      i64 h = 0;
      for (size_t k = ci.size(); k-- > 0;) h = (i64)((__int128)h * (i64)n + ci[k]);
      vals[n - lo] = (u64)(h < 0 ? -h : h);
    }
  }

  void classify(u64 lo, u64 hi, u64 y, std::vector<unsigned char>& cls) const {
    size_t len = hi - lo;
    cls.assign(len, kSmooth);
    if (fits) {
      std::vector<u64> vals;
      values_u64(lo, hi, vals);
      for (auto [p, r] : progs) {
        u64 lr = lo % p;
        u64 n = lo + (r >= lr ? r - lr : p - (lr - r));
        for (; n < hi; n += p) {
          u64& v = vals[n - lo];
          if (v == 0) continue;
          while (v % p == 0) v /= p;
        }
      }
      for (size_t i = 0; i < len; ++i) {
        if (vals[i] == 0)
          cls[i] = kZeroVal;
        else if (!residual_smooth_u64(vals[i], y, pmax))
          cls[i] = kRough;
      }
      return;
    }
    std::vector<Int> vals(len);
    for (u64 n = lo; n < hi; ++n) {
      vals[n - lo] = abs(g.eval(Int((unsigned long)n)));
    }
    for (auto [p, r] : progs) {
      u64 lr = lo % p;
      u64 n = lo + (r >= lr ? r - lr : p - (lr - r));
      for (; n < hi; n += p) {
        Int& v = vals[n - lo];
        if (v == 0) continue;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p))
          mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
      }
    }
    for (size_t i = 0; i < len; ++i) {
      Int& v = vals[i];
      if (v == 0) {
        cls[i] = kZeroVal;
        continue;
      }
      if (mpz_cmp_ui(v.get_mpz_t(), 1) == 0) continue;
      bool settled = false, rough = false;
      u64 prev = pmax;
      for (u64 p : stage2) {
        if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 63) {
          rough = !residual_smooth_u64(v.get_ui(), y, prev);
          settled = true;
          break;
        }
        while (mpz_divisible_ui_p(v.get_mpz_t(), p))
          mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
        if (mpz_cmp_ui(v.get_mpz_t(), y) <= 0) {
          settled = true;
          break;
        }
        prev = p;
      }
      if (!settled) {
        // every prime <= y has been divided out
        rough = mpz_cmp_ui(v.get_mpz_t(), 1) != 0;
      }
      if (rough) cls[i] = kRough;
    }
  }
};

// count n in [1, x] by a per-factor predicate: all factors smooth, or
// (for m_count) no factor smooth
u64 count_by_classes(const FactoredPoly& F, u64 x, u64 y, Workspace& ws, bool want_smooth) {
  const RunConfig& cfg = ws.config();
  u64 pm = std::min<u64>(y, cfg.sieve_threshold);
  std::vector<FactorSieve> sieves(F.factors.size());
  for (size_t i = 0; i < F.factors.size(); ++i)
    sieves[i].prepare(F.factors[i].first, x, y, pm, ws);
  std::atomic<u64> total{0};
  parallel_chunks(1, x + 1, cfg.chunk, cfg.effective_threads(), [&](u64 lo, u64 hi) {
    size_t len = hi - lo;
    std::vector<unsigned char> ok(len, 1), cls;
    for (const FactorSieve& s : sieves) {
      s.classify(lo, hi, y, cls);
      if (want_smooth)
        for (size_t i = 0; i < len; ++i) ok[i] &= (unsigned char)(cls[i] == kSmooth);
      else
        for (size_t i = 0; i < len; ++i) ok[i] &= (unsigned char)(cls[i] != kSmooth);
    }
    u64 c = 0;
    for (unsigned char b : ok) c += b;
    total += c;
    if (cfg.progress)
      std::fprintf(stderr, "sieve: chunk [%llu, %llu) done\n", (unsigned long long)lo,
                   (unsigned long long)hi);
  });
  return total.load();
}

}  // namespace

u64 prime_count(u64 x, Workspace& ws) {
  if (x < 2) return 0;
  return ws.primes(x)->count_leq(x);
}

u64 prime_count_ap(u64 x, u64 q, i64 a, Workspace& ws) {
  if (q == 0) throw domain_error("prime_count_ap: modulus must be positive");
  if (x < 2) return 0;
  u64 r = normalize_residue(q, a);
  u64 c = 0;
  ws.primes(x)->for_each_prime(2, x, [&](u64 p) {
    if (p % q == r) ++c;
  });
  return c;
}

u64 smooth_count(u64 x, u64 y, Workspace& ws) {
  if (x == 0) return 0;
  if (y >= x) return x;
  if (y < 2) return 1;
  const RunConfig& cfg = ws.config();
  auto pt = ws.primes(y);
  std::atomic<u64> total{0};
  parallel_chunks(1, x + 1, cfg.chunk, cfg.effective_threads(), [&](u64 lo, u64 hi) {
    std::vector<u64> r(hi - lo);
    for (u64 n = lo; n < hi; ++n) r[n - lo] = n;
    pt->for_each_prime(2, y, [&](u64 p) {
      u64 n = lo % p == 0 ? lo : lo + (p - lo % p);
      for (; n < hi; n += p) {
        u64& v = r[n - lo];
        while (v % p == 0) v /= p;
      }
    });
    u64 c = 0;
    for (u64 v : r) c += (v == 1);
    total += c;
  });
  return total.load();
}

u64 smooth_count_ap(u64 x, u64 y, u64 q, i64 a, Workspace& ws) {
  if (q == 0) throw domain_error("smooth_count_ap: modulus must be positive");
  if (x == 0) return 0;
  u64 res = normalize_residue(q, a);
  if (y >= x) return count_ap_all(x, q, res);
  if (y < 2) return res == 1 % q ? 1 : 0;
  const RunConfig& cfg = ws.config();
  auto pt = ws.primes(y);
  std::atomic<u64> total{0};
  parallel_chunks(1, x + 1, cfg.chunk, cfg.effective_threads(), [&](u64 lo, u64 hi) {
    std::vector<u64> r(hi - lo);
    for (u64 n = lo; n < hi; ++n) r[n - lo] = n;
    pt->for_each_prime(2, y, [&](u64 p) {
      u64 n = lo % p == 0 ? lo : lo + (p - lo % p);
      for (; n < hi; n += p) {
        u64& v = r[n - lo];
        while (v % p == 0) v /= p;
      }
    });
    u64 c = 0;
    for (u64 n = lo; n < hi; ++n) c += (r[n - lo] == 1 && n % q == res);
    total += c;
  });
  return total.load();
}

u64 poly_smooth_count(const FactoredPoly& F, u64 x, u64 y, Workspace& ws) {
  F.validate();
  if (x == 0) return 0;
  for (const auto& [p, e] : factor_int(abs(F.content))) {
    (void)e;
    if (mpz_cmp_ui(p.get_mpz_t(), (unsigned long)y) > 0) return 0;
  }
  if (F.factors.empty()) return x;
  return count_by_classes(F, x, y, ws, true);
}

u64 shifted_prime_smooth_count(i64 a, u64 x, u64 y, Workspace& ws) {
  if (a == 0) throw domain_error("shifted_prime_smooth_count: shift must be nonzero");
  u64 min_x = a > 0 ? (u64)a + 1 : 1;
  if (x < min_x) throw domain_error("shifted_prime_smooth_count: x below 1 + max(a, 0)");
  const RunConfig& cfg = ws.config();
  auto pt = ws.primes(x);
  u64 pm = std::min<u64>(y, cfg.sieve_threshold);
  FactorSieve s;
  s.prepare(Poly({Int((long)-a), Int(1)}), x, y, pm, ws);
  std::atomic<u64> total{0};
  parallel_chunks(2, x + 1, cfg.chunk, cfg.effective_threads(), [&](u64 lo, u64 hi) {
    std::vector<unsigned char> cls;
    s.classify(lo, hi, y, cls);
    u64 c = 0;
    for (u64 n = lo; n < hi; ++n) c += (cls[n - lo] == kSmooth && pt->is_prime(n));
    total += c;
  });
  return total.load();
}

u64 prime_values_count(const FactoredPoly& F, u64 x, Workspace& ws, bool* used_probable_prime) {
  F.validate();
  for (const auto& [g, m] : F.factors) {
    (void)g;
    if (m != 1) throw domain_error("prime_values_count: polynomial must be squarefree");
  }
  if (used_probable_prime) *used_probable_prime = false;
  if (x == 0) return 0;
  if (F.factors.empty()) {
    Int c = abs(F.content);
    return mpz_probab_prime_p(c.get_mpz_t(), 32) > 0 ? x : 0;
  }
  const RunConfig& cfg = ws.config();
  std::vector<FactorSieve> sieves(F.factors.size());
  std::vector<std::shared_ptr<const PrimeTable>> tables(F.factors.size());
  for (size_t i = 0; i < F.factors.size(); ++i) {
    sieves[i].prepare(F.factors[i].first, x, 0, 0, ws);
    if (sieves[i].fits) {
      Int bound = 0, xp = 1;
      const Poly& g = F.factors[i].first;
      for (int k = 0; k <= g.degree(); ++k) {
        bound += abs(g[k]) * xp;
        xp *= (unsigned long)x;
      }
      if (bound.fits_ulong_p() && bound.get_ui() <= cfg.prime_table_cap)
        tables[i] = ws.primes(std::max<u64>(bound.get_ui(), 2));
    }
  }
  std::atomic<u64> total{0};
  std::atomic<bool> probable{false};
  parallel_chunks(1, x + 1, cfg.chunk, cfg.effective_threads(), [&](u64 lo, u64 hi) {
    size_t len = hi - lo;
    std::vector<unsigned char> ok(len, 1);
    std::vector<u64> vals;
    for (size_t i = 0; i < sieves.size(); ++i) {
      const FactorSieve& s = sieves[i];
      if (s.fits) {
        s.values_u64(lo, hi, vals);
        if (tables[i]) {
          const PrimeTable& t = *tables[i];
          for (size_t k = 0; k < len; ++k) ok[k] &= (unsigned char)t.is_prime(vals[k]);
        } else {
          for (size_t k = 0; k < len; ++k)
            if (ok[k]) ok[k] = (unsigned char)is_prime_u64(vals[k]);
        }
      } else {
        for (u64 n = lo; n < hi; ++n) {
          if (!ok[n - lo]) continue;
          Int v = abs(s.g.eval(Int((unsigned long)n)));
          if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 63) {
            ok[n - lo] = (unsigned char)is_prime_u64(v.get_ui());
          } else {
            ok[n - lo] = (unsigned char)(mpz_probab_prime_p(v.get_mpz_t(), 32) > 0);
            probable.store(true, std::memory_order_relaxed);
          }
        }
      }
    }
    u64 c = 0;
    for (unsigned char b : ok) c += b;
    total += c;
    if (cfg.progress)
      std::fprintf(stderr, "prime values: chunk [%llu, %llu) done\n", (unsigned long long)lo,
                   (unsigned long long)hi);
  });
  if (used_probable_prime) *used_probable_prime = probable.load();
  return total.load();
}

u64 m_count(const FactoredPoly& f, u64 x, u64 y, Workspace& ws) {
  f.validate();
  if (abs(f.content) != 1) throw domain_error("m_count: polynomial must be primitive");
  if (x == 0) return 0;
  if (f.factors.empty()) return x;
  return count_by_classes(f, x, y, ws, false);
}

ErrorTerm error_term(const FactoredPoly& F, u64 x, u64 P, Workspace& ws) {
  if (x < 2) throw domain_error("error_term: x must be at least 2");
  SingularSeries ss = singular_series(F, P, ws);
  ErrorTerm et;
  et.constant = ss.value;
  et.admissible = ss.admissible;
  bool upp = false;
  et.prime_values = prime_values_count(F, x, ws, &upp);
  et.used_probable_prime = upp;
  et.li = ss.admissible ? li_poly(F, (double)x) : 0.0;
  et.value = (double)et.prime_values - et.constant * et.li;
  unsigned K = F.num_distinct();
  double denom = et.constant * (double)x / std::pow(std::log((double)x), (double)(K + 1));
  et.normalized = denom > 0 ? et.value / denom : 0.0;
  return et;
}

}  // namespace psmooth
