#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "psmooth/util.hpp"

namespace psmooth {

// odd-only sieve of the integers up to limit
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit);

  u64 limit() const { return limit_; }

  bool is_prime(u64 n) const {
    if (n > limit_) throw domain_error("PrimeTable: query beyond limit");
    if (n < 3) return n == 2;
    if ((n & 1) == 0) return false;
    u64 i = n >> 1;
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }

  u64 count_leq(u64 x) const;

  template <class F>
  void for_each_prime(u64 lo, u64 hi, F f) const {  // primes in [lo, hi]
    if (hi > limit_) throw domain_error("PrimeTable: query beyond limit");
    if (lo <= 2 && hi >= 2) f(2);
    u64 start = std::max<u64>(lo | 1, 3);
    for (u64 n = start; n <= hi; n += 2) {
      u64 i = n >> 1;
      if ((bits_[i >> 6] >> (i & 63)) & 1) f(n);
    }
  }

  std::vector<u64> primes_in(u64 lo, u64 hi) const;

  void save(const std::string& path) const;
  static PrimeTable load(const std::string& path);
  static PrimeTable load_or_build(u64 limit, const std::string& cache_dir);
  void self_test() const;  // throws if pi(100) or pi(10^6) is wrong

 private:
  PrimeTable() = default;
  u64 limit_ = 0;
  std::vector<u64> bits_;  // bit i = (2i+1 is prime), i >= 1
};

// smallest prime factor for every n <= cap (spf[1] = 1)
std::vector<u32> spf_table(u32 cap);

// full factorization of n >= 1, ascending primes
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

// factorization of a big integer: trial division to 10^6, then either the
// u64 machinery or a primality test; large composite cofactors are an error
std::vector<std::pair<mpz_class, unsigned>> factor_int(const mpz_class& n);

}  // namespace psmooth
