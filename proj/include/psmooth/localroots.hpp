#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "psmooth/poly.hpp"

namespace psmooth {

inline constexpr u64 kHenselCap = 1ull << 40;
inline constexpr u64 kRootListCap = 10'000'000;

struct LocalRootLevel {
  u64 prime = 0;
  unsigned level = 0;
  u64 modulus = 0;           // prime^level
  std::vector<u64> roots;    // sorted residues
  std::vector<bool> simple;  // f'(root) != 0 mod p, inherited along lifts
};

// per-polynomial engine with memoized local data, safe for concurrent use
class LocalRoots {
 public:
  explicit LocalRoots(Poly f, u64 seed = 0x243f6a8885a308d3ull);

  const Poly& poly() const { return f_; }

  std::vector<u64> roots_mod_p(u64 p);
  u64 sigma_p(u64 p);  // root count mod p, equals p when f vanishes mod p
  u64 sigma_pnu(u64 p, unsigned nu, u64 cap = kHenselCap);
  u64 sigma(u64 n, u64 cap = kHenselCap);
  Rat sigma_star(u64 n, u64 cap = kHenselCap);
  Rat G_of(u64 n);  // prod over p | n of (1 - sigma(p)/p)^-1
  std::vector<u64> root_set(u64 h, u64 cap = kHenselCap);  // b in [1,h], h | f(b)
  std::vector<LocalRootLevel> hensel_table(u64 p, unsigned max_level, u64 cap = kHenselCap);

 private:
  Poly f_, fprime_;
  Int disc_;  // 0 when degree < 2 or f not squarefree
  u64 seed_;
  std::mutex mu_;
  std::map<u64, std::vector<u64>> roots_cache_;
  std::map<std::pair<u64, unsigned>, u64> count_cache_;

  std::vector<u64> roots_mod_p_nolock(u64 p);
  u64 sigma_pnu_nolock(u64 p, unsigned nu, u64 cap);
  std::vector<LocalRootLevel> hensel_nolock(u64 p, unsigned max_level, u64 cap);
};

// distinct-root count mod p without extracting the roots
u64 count_roots_mod_p(const Poly& f, u64 p);

u64 sigma(const Poly& f, u64 n);
Rat sigma_star(const Poly& f, u64 n);
Rat G_of(const Poly& f, u64 n);
std::vector<u64> roots_mod_p(const Poly& f, u64 p);
std::vector<u64> root_set(const Poly& f, u64 h);

// simultaneous congruences f_i(b) == 0 mod h_i for pairwise coprime moduli,
// returned as residues b in [1, prod h_i]
std::vector<u64> root_set_multi(const std::vector<Poly>& fs, const std::vector<u64>& hs);

std::vector<LocalRootLevel> hensel_sigma_table(const Poly& f, u64 p, unsigned max_level);

}  // namespace psmooth
