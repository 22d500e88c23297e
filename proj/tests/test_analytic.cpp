#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "psmooth/dickman.hpp"
#include "psmooth/li.hpp"
#include "psmooth/singular.hpp"

using namespace psmooth;

TEST_CASE("rho equals 1 on [0,1] and 1 - log u on [1,2]") {
  for (int i = 0; i <= 1000; ++i) {
    double u = i / 1000.0;
    CHECK(dickman_rho(u) == doctest::Approx(1.0).epsilon(1e-15));
    double v = 1.0 + u;
    CHECK(std::fabs(dickman_rho(v) - (1.0 - std::log(v))) <= 1e-9);
  }
}

TEST_CASE("rho at reference points") {
  CHECK(std::fabs(dickman_rho(2.0) - fixtures::kRho2) <= 1e-12);
  CHECK(std::fabs(dickman_rho(2.2) - fixtures::kRho2_2) <= 1e-12);
  CHECK(std::fabs(dickman_rho(2.5) - fixtures::kRho2_5) <= 1e-12);
  CHECK(std::fabs(dickman_rho(3.0) - fixtures::kRho3) <= 1e-12);
}

TEST_CASE("rho agrees with an independent coarse integrator") {
  for (double u : {1.5, 2.0, 2.5, 3.0, 4.0, 5.5}) {
    CHECK(std::fabs(dickman_rho(u) - fixtures::oracle_rho(u)) <= 1e-8);
  }
}

TEST_CASE("rho satisfies its differential equation between lag points") {
  double h = 1.0 / 8192;
  for (double u = 1.05; u <= 9.95; u += 0.025) {
    double frac = u - std::floor(u);
    if (frac < 0.06 || frac > 0.94) continue;
    double d = (dickman_rho(u + h) - dickman_rho(u - h)) / (2 * h);
    CHECK(std::fabs(u * d + dickman_rho(u - 1)) <= 1e-6);
  }
}

TEST_CASE("rho is positive and strictly decreasing past 1") {
  double prev = dickman_rho(1.0);
  for (double u = 1.01; u <= 10.0; u += 0.01) {
    double v = dickman_rho(u);
    CHECK(v > 0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("rho domain limits") {
  CHECK_THROWS_AS((void)dickman_rho(-0.5), domain_error);
  DickmanTable t = DickmanTable::build(5.0);
  CHECK(t.u_max() == doctest::Approx(5.0));
  CHECK_THROWS_AS((void)t.rho(5.01), domain_error);
  CHECK(t.rho(5.0) > 0);
}

TEST_CASE("rho table csv round trip") {
  DickmanTable t = DickmanTable::build(3.0);
  std::stringstream ss;
  t.export_csv(ss);
  DickmanTable u = DickmanTable::import_csv(ss);
  REQUIRE(u.values().size() == t.values().size());
  // export writes 12 significant digits
  for (size_t i = 0; i < t.values().size(); ++i)
    CHECK(u.values()[i] == doctest::Approx(t.values()[i]).epsilon(1e-11));
}

TEST_CASE("adaptive simpson on closed forms") {
  CHECK(adaptive_simpson([](double t) { return t * t; }, 0, 1) ==
        doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(adaptive_simpson([](double t) { return std::sin(t); }, 0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double t) { return 1.0 / t; }, 1, std::exp(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double t) { return t; }, 3, 3) == 0.0);
}

TEST_CASE("logarithmic integral reference values") {
  CHECK(li_classic(2.0) == 0.0);
  CHECK(li_classic(1.5) == 0.0);
  CHECK(li_classic(-1.0) == 0.0);
  CHECK(std::fabs(li_classic(100.0) - fixtures::kLi100) <= 1e-9);
  CHECK(std::fabs(li_classic(1e6) - fixtures::kLi1e6) <= 1e-6);
  CHECK(li_classic(-100.0) == -li_classic(100.0));
  CHECK(li_classic(2.0001) > 0);
  CHECK(li_classic(2.0001) < 1e-3);
}

TEST_CASE("li difference tracks the local density") {
  for (double x : {1e3, 1e6, 1e9}) {
    for (double y : {std::sqrt(x), x / 10, x / 2}) {
      double lhs = std::fabs(li_classic(x) - li_classic(x - y) - y / std::log(x));
      CHECK(lhs <= 5 * y / (std::log(x) * std::log(x)));
    }
  }
}

TEST_CASE("li_poly reduces to li for the identity polynomial") {
  for (double x : {10.0, 100.0, 1e4}) {
    CHECK(std::fabs(li_poly(parse_factored("[t]"), x) - li_classic(x)) <= 1e-9);
  }
}

TEST_CASE("li_poly under a linear change of variables") {
  for (auto [q, b] : std::vector<std::pair<double, double>>{{4, 3}, {2, 1}, {5, 2}, {1, 10}}) {
    for (double x : {100.0, 5e4}) {
      char buf[64];
      snprintf(buf, sizeof buf, "[%d*t%+d]", (int)q, (int)b);
      double direct = li_poly(parse_factored(buf), x);
      double formula = (li_classic(q * x + b) - li_classic(std::max(b, 2.0))) / q;
      CHECK(std::fabs(direct - formula) <= 1e-6);
    }
  }
  // a negative offset adds the window where the factor is still <= -2
  double direct = li_poly(parse_factored("[5*t-7]"), 100);
  double formula = (li_classic(5 * 100 - 7) + li_classic(7)) / 5;
  CHECK(std::fabs(direct - formula) <= 1e-6);
}

TEST_CASE("li_poly respects the |F| >= 2 cutoff") {
  CHECK(li_poly(parse_factored("[t-2]"), 4) == 0.0);
  CHECK(std::fabs(li_poly(parse_factored("[t-2]"), 10) - li_classic(8)) <= 1e-9);
}

TEST_CASE("li_poly against direct quadrature") {
  double quad = li_poly(parse_factored("[t^2+1]"), 100);
  double ref = adaptive_simpson([](double t) { return 1.0 / std::log(t * t + 1); }, 1, 100, 1e-12);
  CHECK(std::fabs(quad - ref) <= 1e-8);

  double tw = li_poly(parse_factored("[t; t+2]"), 1000);
  double ref2 = adaptive_simpson(
      [](double t) { return 1.0 / (std::log(t) * std::log(t + 2)); }, 2, 1000, 1e-12);
  CHECK(std::fabs(tw - ref2) <= 1e-8);
}

TEST_CASE("weighted li_poly") {
  // unit weights agree with the unweighted integral for an effective factor
  CHECK(li_poly_weighted(parse_factored("[t+2]"), {1}, 500) ==
        doctest::Approx(li_poly(parse_factored("[t+2]"), 500)).epsilon(1e-12));
  // weight 5 on f(5t+2)/5 with f = t^2+1; the cutoff point is exactly t = 1
  double w5 = li_poly_weighted(parse_factored("[5*t^2+4*t+1]"), {5}, 200);
  double ref = adaptive_simpson(
      [](double t) { return 1.0 / std::log((5 * t * t + 4 * t + 1) / 5.0); }, 1, 200, 1e-12);
  CHECK(std::fabs(w5 - ref) <= 1e-8);
  // window entirely below the cutoff
  CHECK(li_poly_weighted(parse_factored("[5*t^2+4*t+1]"), {5}, 0.5) == 0.0);
}

TEST_CASE("singular series closed cases") {
  Workspace ws;
  auto one = singular_series(parse_factored("[t]"), 1000, ws);
  CHECK(one.value == 1.0);
  CHECK(one.admissible);
  auto zero = singular_series(parse_factored("[t; t+1]"), 1000, ws);
  CHECK(zero.value == 0.0);
  CHECK_FALSE(zero.admissible);
}

TEST_CASE("twin factor constant matches the classical product") {
  Workspace ws;
  auto tw = singular_series(parse_factored("[t; t+2]"), 1000000, ws);
  CHECK(tw.admissible);
  CHECK(tw.truncation == 1000000);
  CHECK(std::fabs(tw.value - fixtures::kTwoC2) <= 1e-9);
}

TEST_CASE("singular series stabilizes within its reported tail") {
  Workspace ws;
  for (const char* txt : {"[t; t+2]", "[t^2+1]", "[t^2+2*t+2]", "[t; t+2; t+6]"}) {
    FactoredPoly F = parse_factored(txt);
    for (u64 P : {10000ull, 100000ull}) {
      auto a = singular_series(F, P, ws);
      auto b = singular_series(F, 2 * P, ws);
      CAPTURE(txt);
      CAPTURE(P);
      // the tail report is an estimate; doubling the cutoff must stay within
      // a small multiple of it
      CHECK(std::fabs(a.value - b.value) <= 3 * a.tail_estimate + 1e-12);
      CHECK(std::fabs(a.value - a.value_half) <= a.tail_estimate + 1e-12);
      CHECK(a.tail_estimate >= 0);
    }
  }
}

TEST_CASE("prime-sum surrogate equals 1 - log u up to the crossover") {
  Workspace ws;
  for (double u : {1.0, 1.3, 1.7, 2.0}) {
    CHECK(mertens_rho(u, 1e10, ws) == doctest::Approx(1.0 - std::log(u)).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)mertens_rho(0.5, 1e10, ws), domain_error);
}

TEST_CASE("prime-sum surrogate tracks rho past the crossover") {
  Workspace ws;
  for (double u : {2.2, 2.5, 2.8, 3.0}) {
    CHECK(std::fabs(mertens_rho(u, 1e10, ws) - dickman_rho(u)) <= 0.05);
  }
}
