#include "psmooth/primes.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace psmooth {

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  u64 nodd = limit / 2 + 1;
  bits_.assign((nodd + 63) / 64, ~0ull);
  bits_[0] &= ~1ull;  // 1 is not prime
  for (u64 p = 3; p * p <= limit; p += 2) {
    u64 i = p >> 1;
    if (!((bits_[i >> 6] >> (i & 63)) & 1)) continue;
    for (u64 m = p * p; m <= limit; m += 2 * p) {
      u64 j = m >> 1;
      bits_[j >> 6] &= ~(1ull << (j & 63));
    }
  }
  // clear slack bits beyond limit
  for (u64 i = nodd; i < bits_.size() * 64; ++i) bits_[i >> 6] &= ~(1ull << (i & 63));
}

u64 PrimeTable::count_leq(u64 x) const {
  if (x > limit_) throw domain_error("PrimeTable: query beyond limit");
  if (x < 2) return 0;
  u64 count = 1;  // the prime 2
  u64 imax = (x - 1) / 2;  // odd n <= x  <=>  index <= imax, n = 2i+1
  for (u64 w = 0; w <= imax / 64; ++w) {
    u64 word = bits_[w];
    if (w == imax / 64 && (imax & 63) != 63) word &= (1ull << ((imax & 63) + 1)) - 1;
    count += std::popcount(word);
  }
  return count;
}

std::vector<u64> PrimeTable::primes_in(u64 lo, u64 hi) const {
  std::vector<u64> out;
  for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

void PrimeTable::save(const std::string& path) const {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot write prime cache: " + tmp);
    out.write("PSPT1", 5);
    unsigned char lim[8];
    for (int i = 0; i < 8; ++i) lim[i] = (unsigned char)(limit_ >> (8 * i));
    out.write((const char*)lim, 8);
    u64 nodd = limit_ / 2 + 1;
    u64 nbytes = (nodd + 7) / 8;
    std::vector<unsigned char> buf(nbytes, 0);
    for (u64 i = 0; i < nodd; ++i)
      if ((bits_[i >> 6] >> (i & 63)) & 1) buf[i >> 3] |= (unsigned char)(1u << (i & 7));
    out.write((const char*)buf.data(), (std::streamsize)nbytes);
    if (!out) throw resource_error("short write on prime cache: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw resource_error("cannot move prime cache into place: " + path);
  }
}

PrimeTable PrimeTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw resource_error("cannot open prime cache: " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::memcmp(magic, "PSPT1", 5) != 0)
    throw resource_error("bad prime cache magic: " + path);
  unsigned char lim[8];
  in.read((char*)lim, 8);
  if (!in) throw resource_error("truncated prime cache: " + path);
  u64 limit = 0;
  for (int i = 0; i < 8; ++i) limit |= (u64)lim[i] << (8 * i);
  PrimeTable t;
  t.limit_ = limit;
  u64 nodd = limit / 2 + 1;
  u64 nbytes = (nodd + 7) / 8;
  std::vector<unsigned char> buf(nbytes);
  in.read((char*)buf.data(), (std::streamsize)nbytes);
  if (!in) throw resource_error("truncated prime cache: " + path);
  t.bits_.assign((nodd + 63) / 64, 0);
  for (u64 i = 0; i < nodd; ++i)
    if ((buf[i >> 3] >> (i & 7)) & 1) t.bits_[i >> 6] |= 1ull << (i & 63);
  t.self_test();
  return t;
}

void PrimeTable::self_test() const {
  if (limit_ >= 100 && count_leq(100) != 25) throw resource_error("prime cache failed pi(100) check");
  if (limit_ >= 1000000 && count_leq(1000000) != 78498)
    throw resource_error("prime cache failed pi(10^6) check");
}

PrimeTable PrimeTable::load_or_build(u64 limit, const std::string& cache_dir) {
  std::string path = cache_dir + "/primes_" + std::to_string(limit) + ".pspt";
  if (!cache_dir.empty() && std::filesystem::exists(path)) {
    try {
      PrimeTable t = load(path);
      if (t.limit_ >= limit) return t;
    } catch (const resource_error&) {
      // fall through and rebuild
    }
  }
  PrimeTable t(limit);
  t.self_test();
  if (!cache_dir.empty()) {
    try {
      t.save(path);
    } catch (const resource_error&) {
      // cache is an optimization; building still succeeded
    }
  }
  return t;
}

namespace {

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  u64 c = 1;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    int steps = 0;
    auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
    do {
      x = f(x);
      y = f(f(y));
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      q = mulmod(q, diff, n);
      if (++steps % 64 == 0) {
        d = gcd_u64(q, n);
        if (d != 1) break;
      }
    } while (steps < 1 << 22);
    if (d == 1) d = gcd_u64(q, n);
    if (d == n) {
      // the batch swallowed every copy of the factor; rewalk with per-step gcd
      x = y = 2;
      d = 1;
      steps = 0;
      do {
        x = f(x);
        y = f(f(y));
        u64 diff = x > y ? x - y : y - x;
        if (diff == 0) break;
        d = gcd_u64(diff, n);
        if (d != 1) break;
      } while (++steps < 1 << 22);
    }
    if (d != 1 && d != n) return d;
    ++c;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  if (n == 0) throw domain_error("factor_u64: n must be >= 1");
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.emplace_back(rest[i], (unsigned)(j - i));
      i = j;
    }
  }
  return out;
}

std::vector<std::pair<mpz_class, unsigned>> factor_int(const mpz_class& n0) {
  mpz_class n = n0 < 0 ? mpz_class(-n0) : n0;
  if (n == 0) throw domain_error("factor_int: zero");
  std::vector<std::pair<mpz_class, unsigned>> out;
  auto strip = [&](const mpz_class& p) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (u64 d = 5; d <= 1000000 && n > 1; d += 6) {
    if (mpz_fdiv_ui(n.get_mpz_t(), d) == 0) strip(mpz_class((unsigned long)d));
    if (mpz_fdiv_ui(n.get_mpz_t(), d + 2) == 0) strip(mpz_class((unsigned long)(d + 2)));
  }
  if (n > 1) {
    if (n.fits_ulong_p()) {
      for (auto [p, e] : factor_u64(n.get_ui())) out.emplace_back(mpz_class((unsigned long)p), e);
    } else if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
      out.emplace_back(n, 1);
    } else {
      throw resource_error("cannot factor large composite cofactor " + n.get_str());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u32> spf_table(u32 cap) {
  std::vector<u32> spf(cap + 1, 0);
  if (cap >= 1) spf[1] = 1;
  for (u64 i = 2; i <= cap; ++i) {
    if (spf[i] != 0) continue;
    for (u64 j = i; j <= cap; j += i)
      if (spf[j] == 0) spf[j] = (u32)i;
  }
  return spf;
}

}  // namespace psmooth
