#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"

namespace fixtures {

using psmooth::FactoredPoly;
using psmooth::Int;
using psmooth::i64;
using psmooth::u64;

// solver-independent reference values
inline constexpr double kRho2 = 0.306852819440055;       // 1 - log 2
inline constexpr double kRho2_2 = 0.220357137908328;
inline constexpr double kRho2_5 = 0.130319561832251;
inline constexpr double kRho3 = 0.0486083882911316;
inline constexpr double kLi100 = 29.0809778039621;       // integral from 2 to 100 of dt/log t
inline constexpr double kLi1e6 = 78626.5039956821;
inline constexpr double kTwoC2 = 1.3203237211796681;     // 2 prod_{p>2} (1 - (p-1)^-2)
inline constexpr double kH100 = 5.187377517639621;       // harmonic number H_100

// trial division by every integer, no prime machinery shared with the library
inline bool oracle_smooth(Int v, u64 y) {
  if (v == 0) return false;
  v = abs(v);
  Int d = 2;
  while (d * d <= v) {
    if (v % d == 0) {
      if (mpz_cmp_ui(d.get_mpz_t(), (unsigned long)y) > 0) return false;
      while (v % d == 0) v /= d;
    }
    d += 1;
  }
  if (v > 1 && mpz_cmp_ui(v.get_mpz_t(), (unsigned long)y) > 0) return false;
  return true;
}

inline bool oracle_is_prime(Int v) {
  v = abs(v);
  if (v < 2) return false;
  Int d = 2;
  while (d * d <= v) {
    if (v % d == 0) return false;
    d += 1;
  }
  return true;
}

// every factor value has some prime factor above y; zero values qualify
inline bool oracle_rough(const Int& v, u64 y) {
  if (v == 0) return true;
  Int w = abs(v);
  Int d = 2;
  while (d * d <= w && mpz_cmp_ui(d.get_mpz_t(), (unsigned long)y) <= 0) {
    while (w % d == 0) w /= d;
    d += 1;
  }
  return w > 1 && mpz_cmp_ui(w.get_mpz_t(), (unsigned long)y) > 0;
}

inline u64 oracle_poly_smooth_count(const FactoredPoly& F, u64 x, u64 y) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n)
    if (oracle_smooth(F.eval(Int((unsigned long)n)), y)) count++;
  return count;
}

inline u64 oracle_smooth_count(u64 x, u64 y) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n)
    if (oracle_smooth(Int((unsigned long)n), y)) count++;
  return count;
}

inline u64 oracle_smooth_count_ap(u64 x, u64 y, u64 q, i64 a) {
  i64 m = (i64)q;
  u64 res = (u64)(((a % m) + m) % m);
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n)
    if (n % q == res && oracle_smooth(Int((unsigned long)n), y)) count++;
  return count;
}

inline u64 oracle_shifted_prime_count(i64 a, u64 x, u64 y) {
  u64 count = 0;
  for (u64 n = 2; n <= x; ++n) {
    if (!oracle_is_prime(Int((unsigned long)n))) continue;
    Int shifted = Int((unsigned long)n) - Int((long)a);
    if (shifted == 0) continue;
    if (oracle_smooth(shifted, y)) count++;
  }
  return count;
}

inline u64 oracle_prime_values_count(const FactoredPoly& F, u64 x) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool all = true;
    for (const auto& [g, m] : F.factors) {
      (void)m;
      if (!oracle_is_prime(g.eval(Int((unsigned long)n)))) {
        all = false;
        break;
      }
    }
    if (all && !F.factors.empty()) count++;
  }
  return count;
}

inline u64 oracle_m_count(const FactoredPoly& f, u64 x, u64 y) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool all = true;
    for (const auto& [g, m] : f.factors) {
      (void)m;
      if (!oracle_rough(g.eval(Int((unsigned long)n)), y)) {
        all = false;
        break;
      }
    }
    if (all) count++;
  }
  return count;
}

inline u64 oracle_prime_count_ap(u64 x, u64 q, i64 a) {
  i64 m = (i64)q;
  u64 res = (u64)(((a % m) + m) % m);
  u64 count = 0;
  for (u64 n = 2; n <= x; ++n)
    if (n % q == res && oracle_is_prime(Int((unsigned long)n))) count++;
  return count;
}

// independent Dickman solver: trapezoidal backward integration of
// u rho'(u) = -rho(u-1) on a uniform grid, written before the production
// solver and deliberately simpler than it
inline double oracle_rho(double u, double step = 1.0 / 16384.0) {
  if (u <= 1) return u < 0 ? 0.0 : 1.0;
  size_t n = (size_t)std::ceil(u / step);
  step = u / (double)n;
  std::vector<double> v(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    double ui = (double)i * step;
    if (ui <= 1.0 + 1e-15) {
      v[i] = 1.0;
      continue;
    }
    auto lag = [&](size_t j) {
      double uj = (double)j * step - 1.0;
      if (uj <= 0) return 1.0;
      size_t k = (size_t)(uj / step);
      double frac = uj / step - (double)k;
      if (k + 1 > i) return v[i - 1];
      return v[k] * (1 - frac) + v[k + 1] * frac;
    };
    double a = lag(i - 1) / ((double)(i - 1) * step);
    double b = lag(i) / ((double)i * step);
    v[i] = v[i - 1] - step * (a + b) / 2.0;
  }
  return v[n];
}

inline psmooth::Workspace make_ws() { return psmooth::Workspace(); }

}  // namespace fixtures
