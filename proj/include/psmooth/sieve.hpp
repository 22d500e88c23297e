#pragma once

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"

namespace psmooth {

u64 prime_count(u64 x, Workspace& ws);
u64 prime_count_ap(u64 x, u64 q, i64 a, Workspace& ws);

u64 smooth_count(u64 x, u64 y, Workspace& ws);
u64 smooth_count_ap(u64 x, u64 y, u64 q, i64 a, Workspace& ws);

// count of 1 <= n <= x with |F(n)| y-smooth; F(n) = 0 never counts,
// |F(n)| = 1 always counts
u64 poly_smooth_count(const FactoredPoly& F, u64 x, u64 y, Workspace& ws);

// primes q <= x with |q - a| y-smooth, q = a excluded
u64 shifted_prime_smooth_count(i64 a, u64 x, u64 y, Workspace& ws);

// count of n <= x where every distinct factor value |F_i(n)| is prime
u64 prime_values_count(const FactoredPoly& F, u64 x, Workspace& ws,
                       bool* used_probable_prime = nullptr);

// count of n <= x where every factor g of f has a prime p > y dividing g(n)
u64 m_count(const FactoredPoly& f, u64 x, u64 y, Workspace& ws);

struct ErrorTerm {
  u64 prime_values = 0;
  double constant = 0;  // truncated singular series
  double li = 0;
  double value = 0;       // prime_values - constant * li
  double normalized = 0;  // value / (constant * x / log^(K+1) x), 0 when constant = 0
  bool admissible = true;
  bool used_probable_prime = false;
};

ErrorTerm error_term(const FactoredPoly& F, u64 x, u64 P, Workspace& ws);

}  // namespace psmooth
