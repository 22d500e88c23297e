#include "psmooth/singular.hpp"

#include <cmath>
#include <set>

#include "psmooth/localroots.hpp"

namespace psmooth {

namespace {

// distinct roots of a primitive factor mod p, count only
u64 count_roots(const Poly& g, u64 p) {
  if (g.degree() > 31) return count_roots_mod_p(g, p);
  u64 c[32];
  int top = -1;
  for (int i = 0; i <= g.degree(); ++i) {
    u64 r = mpz_fdiv_ui(g[(size_t)i].get_mpz_t(), p);
    c[i] = r;
    if (r != 0) top = i;
  }
  if (top < 0) return p;  // cannot happen for primitive g
  if (top == 0) return 0;
  if (top == 1) return 1;
  if (p == 2) {
    u64 f0 = c[0], f1 = 0;
    for (int i = 0; i <= top; ++i) f1 ^= c[i];
    return (f0 == 0) + (f1 == 0);
  }
  if (top == 2) {
    u64 disc = submod(mulmod(c[1], c[1], p), mulmod(4 % p, mulmod(c[2], c[0], p), p), p);
    if (disc == 0) return 1;
    u64 e = powmod(disc, (p - 1) / 2, p);
    return e == 1 ? 2 : 0;
  }
  if (p < (1u << 14)) {
    u64 n = 0;
    for (u64 r = 0; r < p; ++r) {
      u64 v = 0;
      for (int i = top; i >= 0; --i) v = addmod(mulmod(v, r, p), c[i], p);
      if (v == 0) ++n;
    }
    return n;
  }
  return count_roots_mod_p(g, p);
}

}  // namespace

u64 sigma_union_p(const FactoredPoly& F, u64 p) {
  if (mpz_fdiv_ui(F.content.get_mpz_t(), p) == 0) return p;
  std::set<u64> u;
  for (const auto& [g, m] : F.factors) {
    (void)m;
    for (u64 r : roots_mod_p(g, p)) u.insert(r);
  }
  return u.size();
}

SingularSeries singular_series(const FactoredPoly& F, u64 P, Workspace& ws) {
  F.validate();
  if (P < 2) throw domain_error("truncation must be >= 2");
  if (F.content != 1)
    throw domain_error("singular series needs a primitive polynomial");
  for (const auto& fm : F.factors)
    if (fm.second > 1) throw domain_error("singular series needs a squarefree polynomial");
  SingularSeries out;
  out.truncation = P;
  if (F.factors.empty()) {
    out.value = out.value_half = 1.0;
    out.tail_estimate = 2e-12;
    return out;
  }
  Poly E = F.expand();
  if (!is_squarefree(E)) throw domain_error("singular series needs a squarefree polynomial");
  unsigned K = F.num_distinct();
  int D = F.degree();

  // primes where two factors can share a root
  std::set<u64> shared;
  for (size_t i = 0; i < F.factors.size(); ++i)
    for (size_t j = i + 1; j < F.factors.size(); ++j) {
      Int res = resultant(F.factors[i].first, F.factors[j].first);
      for (const auto& [p, e] : factor_int(res)) {
        (void)e;
        if (p.fits_ulong_p() && p.get_ui() <= P) shared.insert(p.get_ui());
      }
    }

  for (int p = 2; p <= D && (u64)p <= P; ++p) {
    bool isp = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) isp = false;
    if (!isp) continue;
    if (sigma_union_p(F, (u64)p) == (u64)p) {
      out.admissible = false;
      out.value = out.value_half = 0.0;
      out.tail_estimate = 0.0;
      return out;
    }
  }

  auto table = ws.primes(P);
  double logsum = 0.0, logsum_half = 0.0;
  u64 Phalf = P / 2;
  table->for_each_prime(2, P, [&](u64 p) {
    u64 s;
    if (shared.count(p)) {
      s = sigma_union_p(F, p);
    } else {
      s = 0;
      for (const auto& fm : F.factors) s += count_roots(fm.first, p);
    }
    double dp = (double)p;
    logsum += -(double)K * std::log1p(-1.0 / dp) + std::log1p(-(double)s / dp);
    if (p <= Phalf) logsum_half = logsum;
  });
  out.value = std::exp(logsum);
  out.value_half = std::exp(logsum_half);
  out.tail_estimate = 2.0 * std::abs(out.value - out.value_half) + 1e-12 * (1.0 + std::abs(out.value));
  return out;
}

double mertens_rho(double u, double t, Workspace& ws) {
  if (!(u >= 1.0)) throw domain_error("prime-sum rho needs u >= 1");
  double y = std::pow(t, 1.0 / u);
  if (!(y >= 2.0)) throw domain_error("prime-sum rho needs t^(1/u) >= 2");
  double base = 1.0 - std::log(u);
  if (u <= 2.0) return base;
  double hi = std::sqrt(t);
  auto table = ws.primes((u64)hi + 1);
  double sum = 0.0;
  table->for_each_prime(2, (u64)hi, [&](u64 p) {
    if ((double)p <= y) return;
    double lp = std::log((double)p);
    sum += std::log(std::log(t / (double)p) / lp) / (double)p;
  });
  return base + sum;
}

}  // namespace psmooth
