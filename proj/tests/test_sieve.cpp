#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "fixtures.hpp"
#include "psmooth/sieve.hpp"

using namespace psmooth;
using fixtures::oracle_m_count;
using fixtures::oracle_poly_smooth_count;
using fixtures::oracle_prime_count_ap;
using fixtures::oracle_prime_values_count;
using fixtures::oracle_shifted_prime_count;
using fixtures::oracle_smooth_count;
using fixtures::oracle_smooth_count_ap;

namespace {
Workspace& ws() {
  static Workspace w;
  return w;
}
}  // namespace

TEST_CASE("prime counting reference values") {
  CHECK(prime_count(100, ws()) == 25);
  CHECK(prime_count(1000000, ws()) == 78498);
  CHECK(prime_count(1, ws()) == 0);
  CHECK(prime_count(2, ws()) == 1);
  CHECK(prime_count_ap(100, 4, 1, ws()) == 11);
  CHECK(prime_count_ap(100, 4, 3, ws()) == 13);
  // 2 is the only prime in the even classes
  CHECK(prime_count_ap(100, 4, 2, ws()) == 1);
  CHECK(prime_count_ap(100, 4, 0, ws()) == 0);
}

TEST_CASE("prime counting in progressions matches the oracle") {
  for (u64 q : {1ull, 2ull, 3ull, 5ull, 6ull, 7ull}) {
    for (i64 a = 0; a < (i64)q; ++a) {
      CHECK(prime_count_ap(500, q, a, ws()) == oracle_prime_count_ap(500, q, a));
    }
  }
  // negative residues are folded
  CHECK(prime_count_ap(500, 4, -1, ws()) == prime_count_ap(500, 4, 3, ws()));
}

TEST_CASE("smooth counting reference values") {
  CHECK(smooth_count(100, 10, ws()) == 46);
  CHECK(smooth_count(10, 2, ws()) == 4);
  CHECK(smooth_count(100, 1, ws()) == 1);  // only n = 1
  CHECK(smooth_count(0, 10, ws()) == 0);
  CHECK(smooth_count(50, 50, ws()) == 50);
}

TEST_CASE("smooth counts match trial division") {
  for (u64 y : {2ull, 3ull, 5ull, 10ull, 50ull, 1000ull}) {
    CHECK(smooth_count(300, y, ws()) == oracle_smooth_count(300, y));
  }
}

TEST_CASE("smooth counts are monotone") {
  for (u64 x = 50; x <= 250; x += 50)
    for (u64 y : {3ull, 7ull, 20ull}) {
      CHECK(smooth_count(x + 50, y, ws()) >= smooth_count(x, y, ws()));
      CHECK(smooth_count(x, y + 5, ws()) >= smooth_count(x, y, ws()));
    }
}

TEST_CASE("progression smooth counts match the oracle and sum to the total") {
  for (u64 q : {3ull, 4ull, 5ull}) {
    for (u64 y : {5ull, 20ull}) {
      u64 total = 0;
      for (i64 a = 0; a < (i64)q; ++a) {
        u64 c = smooth_count_ap(400, y, q, a, ws());
        CHECK(c == oracle_smooth_count_ap(400, y, q, a));
        total += c;
      }
      CHECK(total == smooth_count(400, y, ws()));
    }
  }
}

TEST_CASE("polynomial smooth counting conventions") {
  // values -2, -1, 0, 1, 2 at n = 1..5: zero never counts, units always do
  CHECK(poly_smooth_count(parse_factored("[t-3]"), 5, 2, ws()) == 4);
  CHECK(poly_smooth_count(parse_factored("[t; t+2]"), 100, 10, ws()) == 22);
  CHECK(poly_smooth_count(parse_factored("[t]"), 100, 10, ws()) == 46);
}

TEST_CASE("polynomial smooth counts match trial division") {
  for (const char* txt : {"[t]", "[t; t+2]", "[t^2+1]", "[t; t^2+1]", "[t-50]", "[t^2+2*t+2]"}) {
    FactoredPoly F = parse_factored(txt);
    for (u64 y : {2ull, 3ull, 5ull, 10ull, 50ull, 1000ull}) {
      CAPTURE(txt);
      CAPTURE(y);
      CHECK(poly_smooth_count(F, 200, y, ws()) == oracle_poly_smooth_count(F, 200, y));
    }
  }
}

TEST_CASE("shifted prime smooth counts") {
  CHECK(shifted_prime_smooth_count(1, 20, 3, ws()) == 7);
  for (i64 a : {1, -1, 2, 5}) {
    for (u64 y : {2ull, 3ull, 10ull, 100ull}) {
      CAPTURE(a);
      CAPTURE(y);
      CHECK(shifted_prime_smooth_count(a, 300, y, ws()) == oracle_shifted_prime_count(a, 300, y));
    }
  }
  // every prime beyond the shift counts once the bound covers all shifts
  CHECK(shifted_prime_smooth_count(1, 200, 200, ws()) == prime_count(200, ws()));
}

TEST_CASE("prime value counting") {
  CHECK(prime_values_count(parse_factored("[t; t+2]"), 10, ws()) == 2);  // n = 3, 5
  for (const char* txt : {"[t]", "[t; t+2]", "[t^2+1]", "[2*t+1]"}) {
    FactoredPoly F = parse_factored(txt);
    CAPTURE(txt);
    CHECK(prime_values_count(F, 300, ws()) == oracle_prime_values_count(F, 300));
  }
}

TEST_CASE("prime values of a linear polynomial reduce to progression counts") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> qd(1, 20);
  int done = 0;
  while (done < 20) {
    u64 q = qd(rng);
    u64 b = rng() % q;
    if (q == 1 && b == 0) continue;
    char buf[64];
    snprintf(buf, sizeof buf, "[%llu*t+%llu]", (unsigned long long)q, (unsigned long long)b);
    FactoredPoly F;
    try {
      F = parse_factored(buf);
    } catch (const domain_error&) {
      continue;  // content > 1 when b = 0 and q > 1
    }
    u64 x = 500;
    u64 lhs = prime_values_count(F, x, ws());
    u64 rhs = prime_count_ap(q * x + b, q, (i64)b, ws()) - prime_count_ap(b, q, (i64)b, ws());
    CAPTURE(buf);
    CHECK(lhs == rhs);
    ++done;
  }
}

TEST_CASE("all factors rough counting") {
  CHECK(m_count(parse_factored("[t-3]"), 5, 2, ws()) == 1);  // only the zero value
  for (const char* txt : {"[t]", "[t; t+2]", "[t^2+1]", "[t-50]"}) {
    FactoredPoly f = parse_factored(txt);
    for (u64 y : {1ull, 2ull, 5ull, 30ull}) {
      CAPTURE(txt);
      CAPTURE(y);
      CHECK(m_count(f, 250, y, ws()) == oracle_m_count(f, 250, y));
    }
  }
}

TEST_CASE("inclusion boundary cases across counters") {
  // y below 2 leaves only units and zeros
  CHECK(poly_smooth_count(parse_factored("[t-2]"), 4, 1, ws()) == 2);  // |v| = 1 at n = 1, 3
  CHECK(m_count(parse_factored("[t-2]"), 4, 1, ws()) == 2);            // v = 0 and v = 2
  CHECK(shifted_prime_smooth_count(2, 10, 1, ws()) == 1);  // only q = 3 has |q-2| = 1
}

TEST_CASE("sieve threshold does not change results") {
  RunConfig lo;
  lo.sieve_threshold = 30;
  Workspace wlo(lo);
  RunConfig hi;
  hi.sieve_threshold = 100000;
  Workspace whi(hi);
  for (const char* txt : {"[t; t+2]", "[t^2+1]"}) {
    FactoredPoly F = parse_factored(txt);
    for (u64 y : {10ull, 100ull, 1000ull}) {
      CHECK(poly_smooth_count(F, 2000, y, wlo) == poly_smooth_count(F, 2000, y, whi));
    }
  }
  CHECK(smooth_count(5000, 100, wlo) == smooth_count(5000, 100, whi));
}

TEST_CASE("error term report is internally consistent") {
  auto et = error_term(parse_factored("[t; t+2]"), 10000, 10000, ws());
  CHECK(et.admissible);
  CHECK(et.prime_values == prime_values_count(parse_factored("[t; t+2]"), 10000, ws()));
  CHECK(et.value == doctest::Approx((double)et.prime_values - et.constant * et.li));
  double x = 10000;
  double logx = std::log(x);
  double denom = et.constant * x / std::pow(logx, 3);
  CHECK(et.normalized == doctest::Approx(et.value / denom));

  auto bad = error_term(parse_factored("[t; t+1]"), 1000, 1000, ws());
  CHECK_FALSE(bad.admissible);
  CHECK(bad.constant == 0.0);
  CHECK(bad.normalized == 0.0);
  CHECK(bad.prime_values == 1);  // only n = 1 gives primes 1*2... none: check oracle
}

TEST_CASE("prime table persistence round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "psmooth_test_cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  PrimeTable t(100000);
  t.self_test();
  fs::path file = dir / "primes.pspt";
  t.save(file.string());
  PrimeTable u = PrimeTable::load(file.string());
  CHECK(u.limit() == t.limit());
  CHECK(u.count_leq(100000) == t.count_leq(100000));
  for (u64 n : {2ull, 97ull, 99991ull, 99989ull}) CHECK(u.is_prime(n) == t.is_prime(n));

  PrimeTable v = PrimeTable::load_or_build(50000, dir.string());
  CHECK(v.limit() >= 50000);
  CHECK(v.count_leq(100) == 25);
  CHECK(fs::exists(dir));
  fs::remove_all(dir);
}

TEST_CASE("prime table queries") {
  PrimeTable t(1000);
  CHECK(t.count_leq(1000) == 168);
  CHECK(t.primes_in(2, 11) == std::vector<u64>{2, 3, 5, 7, 11});
  CHECK(t.primes_in(90, 100) == std::vector<u64>{97});
  CHECK_THROWS_AS((void)t.is_prime(1001), domain_error);
  u64 sum = 0;
  t.for_each_prime(1, 100, [&](u64 p) { sum += p; });
  CHECK(sum == 1060);
}

TEST_CASE("smallest prime factor table") {
  auto spf = spf_table(1000);
  CHECK(spf[1] == 1);
  CHECK(spf[2] == 2);
  CHECK(spf[91] == 7);
  CHECK(spf[97] == 97);
  CHECK(spf[999] == 3);
  for (u32 n = 2; n <= 1000; ++n) {
    CHECK(n % spf[n] == 0);
    CHECK(is_prime_u64(spf[n]));
  }
}

TEST_CASE("factorization handles prime powers and big inputs") {
  // squares of primes once hung the rho walk
  for (u64 p : {19ull, 347ull, 1009ull, 65537ull}) {
    auto f = factor_u64(p * p);
    REQUIRE(f.size() == 1);
    CHECK(f[0].first == p);
    CHECK(f[0].second == 2);
  }
  for (u64 n = 1; n <= 5000; ++n) {
    u64 r = 1;
    for (auto [p, e] : factor_u64(n))
      for (unsigned i = 0; i < e; ++i) r *= p;
    CHECK(r == n);
  }
  Int big = Int("123456789012345678901");  // 3 * 7 * 11 * 13 * 31 * 37 * 61 * 211 * 241 * 2161 * 3607 * 3803
  Int back = 1;
  for (auto [p, e] : factor_int(big))
    for (unsigned i = 0; i < e; ++i) back *= p;
  CHECK(back == big);
  CHECK(factor_int(Int(-12)).size() == 2);
  CHECK_THROWS_AS((void)factor_u64(0), domain_error);
}
