#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>
#include <functional>

namespace psmooth {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// bad input or violated precondition: CLI maps this to a usage failure
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// computation exceeded a documented cap (table size, lifting depth, ...)
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 addmod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + (m - b);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// extended gcd based inverse, m need not be prime but gcd(a,m)=1 required
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, newt = 1;
  i64 r = (i64)m, newr = (i64)(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    i64 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw domain_error("invmod: not invertible");
  if (t < 0) t += (i64)m;
  return (u64)t;
}

// deterministic for all 64-bit inputs with this witness set
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

// run fn(lo, hi) over [begin, end) split into chunks, possibly in parallel
void parallel_chunks(u64 begin, u64 end, u64 chunk, unsigned threads,
                     const std::function<void(u64, u64)>& fn);

}  // namespace psmooth
