#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "psmooth/factored.hpp"
#include "psmooth/poly.hpp"
#include "psmooth/sieve.hpp"

using namespace psmooth;

namespace {

Poly random_poly(std::mt19937_64& rng, int max_deg, int coeff_bound) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-coeff_bound, coeff_bound);
  int d = deg(rng);
  std::vector<Int> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = coef(rng);
  while (c.back() == 0) c.back() = coef(rng);
  return Poly(std::move(c));
}

}  // namespace

TEST_CASE("parse and print round trip") {
  CHECK(to_string(parse_poly("t^2+1")) == "t^2+1");
  CHECK(to_string(parse_poly("2*t^3-t+5")) == "2*t^3-t+5");
  CHECK(to_string(parse_poly("-t")) == "-t");
  CHECK(to_string(parse_poly("7")) == "7");
  CHECK(to_dense_string(parse_poly("t^2+1")) == "(1,0,1)");
  CHECK(parse_poly("t^2 + 2*t + 2") == parse_poly("2+2*t+t^2"));
  CHECK_THROWS_AS((void)parse_poly("t*(t+2)"), domain_error);
  CHECK_THROWS_AS((void)parse_poly(""), domain_error);
  CHECK_THROWS_AS((void)parse_poly("t^"), domain_error);
}

TEST_CASE("evaluation and arithmetic") {
  Poly f = parse_poly("t^2+1");
  CHECK(f.eval(Int(0)) == 1);
  CHECK(f.eval(Int(-3)) == 10);
  CHECK(f.eval(Rat(1, 2)) == Rat(5, 4));
  CHECK(f.eval_double(2.0) == doctest::Approx(5.0));
  Poly g = parse_poly("t-1");
  CHECK(to_string(f * g) == "t^3-t^2+t-1");
  CHECK(to_string(f + g) == "t^2+t");
  CHECK(to_string(f - f) == "0");
  CHECK((f * g).degree() == 3);
  CHECK(Poly().degree() == -1);
  CHECK(to_string(f.derivative()) == "2*t");
  CHECK(to_string(parse_poly("5").derivative()) == "0");
}

TEST_CASE("big coefficient evaluation stays exact") {
  Poly f = parse_poly("t^5-3*t+11");
  Int t = Int("10000000000");
  Int expect = t * t * t * t * t - 3 * t + 11;
  CHECK(f.eval(t) == expect);
}

TEST_CASE("content and primitive part") {
  Poly f = parse_poly("6*t^2+10*t+4");
  CHECK(f.content() == 2);
  CHECK(to_string(f.primitive_part()) == "3*t^2+5*t+2");
  CHECK(f.primitive_part().is_primitive());
  CHECK(parse_poly("-4*t").content() == 4);
  CHECK(Poly().content() == 0);

  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    Poly p = random_poly(rng, 5, 30);
    if (p.is_zero()) continue;
    CHECK(p.primitive_part().content() == 1);
    CHECK(p.primitive_part().scaled(p.content()) == p);
  }
}

TEST_CASE("compose_linear and shifted") {
  Poly f = parse_poly("t^2+1");
  CHECK(to_string(f.compose_linear(2, 3)) == "4*t^2+12*t+10");
  CHECK(to_string(f.shifted(1)) == "t^2+2*t+2");
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int i = 0; i < 100; ++i) {
    Poly p = random_poly(rng, 4, 20);
    Int a = small(rng), b = small(rng), t = small(rng);
    if (a == 0) a = 1;
    CHECK(p.compose_linear(a, b).eval(t) == p.eval(Int(a * t + b)));
  }
}

TEST_CASE("resultant and discriminant") {
  CHECK(resultant(parse_poly("t"), parse_poly("t+2")) == 2);
  CHECK(resultant(parse_poly("t^2+1"), parse_poly("t^2+1")) == 0);
  CHECK(resultant(parse_poly("32*t+1"), parse_poly("32*t+3")) == 64);
  CHECK(discriminant(parse_poly("t^2+1")) == -4);
  CHECK(discriminant(parse_poly("t^2-5*t+6")) == 1);
  CHECK(discriminant(parse_poly("t^3-t")) == 4);
  CHECK(is_squarefree(parse_poly("t^2+1")));
  CHECK_FALSE(is_squarefree(parse_poly("t^2+2*t+1")));
}

TEST_CASE("resultant vanishes exactly on common factors") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(rng, 3, 5);
    Poly b = random_poly(rng, 3, 5);
    Poly c = random_poly(rng, 2, 5);
    if (a.degree() < 1 || b.degree() < 1 || c.degree() < 1) continue;
    CHECK(resultant(a * c, b * c) == 0);
    Int r = resultant(a, b);
    Poly g = poly_gcd(a, b);
    if (g.degree() >= 1) {
      CHECK(r == 0);
    } else {
      CHECK(r != 0);
    }
  }
}

TEST_CASE("poly_gcd recovers planted factors") {
  Poly a = parse_poly("t^2-1");
  Poly b = parse_poly("t^2+2*t+1");
  CHECK(to_string(poly_gcd(a, b)) == "t+1");
  CHECK(poly_gcd(parse_poly("t"), parse_poly("t+1")).degree() == 0);
}

TEST_CASE("fhb_transform on plain polynomials") {
  Poly f = parse_poly("t^2+1");
  CHECK(fhb_transform(f, 1, 0) == f);
  CHECK(to_string(fhb_transform(f, 1, 1)) == "t^2+2*t+2");
  // f(5t+2)/5 = (25t^2+20t+5)/5
  CHECK(to_string(fhb_transform(f, 5, 2)) == "5*t^2+4*t+1");
  CHECK_THROWS_AS((void)fhb_transform(f, 5, 1), domain_error);
  CHECK_THROWS_AS((void)fhb_transform(f, 0, 0), domain_error);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> hd(1, 50), bd(-100, 100), td(-20, 20);
  int done = 0;
  while (done < 200) {
    Poly p = random_poly(rng, 4, 40);
    Int h = hd(rng), b = bd(rng);
    if (p.is_zero() || p.eval(b) % h != 0) continue;
    Poly q = fhb_transform(p, h, b);
    Int t = td(rng);
    CHECK(q.eval(t) * h == p.eval(Int(h * t + b)));
    ++done;
  }
}

TEST_CASE("restrict_to_progression matches direct evaluation") {
  Poly f = parse_poly("t^3-2*t+7");
  Poly r = restrict_to_progression(f, 4, 3);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> td(-50, 50);
  for (int i = 0; i < 100; ++i) {
    Int t = td(rng);
    CHECK(r.eval(t) == f.eval(Int(4 * t + 3)));
  }
  CHECK_THROWS_AS((void)restrict_to_progression(f, 4, 4), domain_error);
  CHECK_THROWS_AS((void)restrict_to_progression(f, 0, 0), domain_error);
}

TEST_CASE("factored parse, expand, eval") {
  FactoredPoly F = parse_factored("[t; t+2]");
  CHECK(F.num_distinct() == 2);
  CHECK(F.degree() == 2);
  CHECK(F.max_factor_degree() == 1);
  CHECK(F.count_max_degree() == 2);
  CHECK(to_string(F.expand()) == "t^2+2*t");
  CHECK(F.eval(Int(3)) == 15);
  CHECK(F == parse_factored("[t+2; t]"));

  FactoredPoly G = parse_factored("2*[t^2+1]");
  CHECK(G.content == 2);
  CHECK(G.factors.size() == 1);
  CHECK(to_string(G.factors[0].first) == "t^2+1");
  CHECK(G.eval(Int(1)) == 4);

  FactoredPoly H = parse_factored("[t; t; t+1]");
  CHECK(H.degree() == 3);
  CHECK(H.num_distinct() == 2);
  CHECK(H.eval(Int(2)) == 12);

  // bare polynomial text falls back to a single declared factor
  FactoredPoly B = parse_factored("t^2+1");
  CHECK(B.num_distinct() == 1);
  CHECK(B.content == 1);

  CHECK_THROWS_AS((void)parse_factored("[2*t^2+2]"), domain_error);
  CHECK_THROWS_AS((void)parse_factored("[]"), domain_error);
  CHECK_THROWS_AS((void)parse_factored("[5]"), domain_error);
}

TEST_CASE("factored expand round trips through eval") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> td(-30, 30);
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(rng, 3, 10);
    Poly b = random_poly(rng, 2, 10);
    if (a.degree() < 1 || b.degree() < 1) continue;
    FactoredPoly F;
    F.factors = {{a, 1}, {b, 2}};
    F.normalize();
    Poly e = F.expand();
    Int t = td(rng);
    CHECK(e.eval(t) == a.eval(t) * b.eval(t) * b.eval(t));
    CHECK(F.eval(t) == e.eval(t));
  }
}

TEST_CASE("structural report flags") {
  auto rep = structural_report(parse_factored("[t; t+2]"));
  CHECK(rep.squarefree);
  CHECK(rep.primitive);
  CHECK(rep.balanced);
  CHECK_FALSE(rep.effective);  // t vanishes at 0 and 1 at t=... values below 2
  CHECK(rep.admissible);
  CHECK_FALSE(rep.exclusive);  // t and t+2 share the root 0 mod 2
  CHECK(rep.witness.count("exclusive") == 1);

  auto rep2 = structural_report(parse_factored("[t; t+1]"));
  CHECK_FALSE(rep2.admissible);  // every n has 2 | n(n+1)
  CHECK(rep2.witness.at("admissible").find("2") != std::string::npos);

  auto rep3 = structural_report(parse_factored("[t^2+1]"));
  CHECK(rep3.squarefree);
  CHECK(rep3.balanced);
  CHECK_FALSE(rep3.effective);  // f(0) = 1 < 2
  CHECK(rep3.admissible);
  CHECK(rep3.exclusive);

  auto rep4 = structural_report(parse_factored("[t^2+2*t+2]"));
  CHECK(rep4.balanced);
  CHECK(rep4.effective);
  CHECK(rep4.admissible);
  CHECK(rep4.exclusive);

  auto rep5 = structural_report(parse_factored("[t; t^2+1]"));
  CHECK_FALSE(rep5.balanced);  // mixed degrees
  CHECK_FALSE(rep5.admissible);  // both residues mod 2 are roots
  CHECK(rep5.witness.count("admissible") == 1);

  auto rep6 = structural_report(parse_factored("[t; t]"));
  CHECK_FALSE(rep6.squarefree);

  auto rep7 = structural_report(parse_factored("2*[t+1]"));
  CHECK_FALSE(rep7.primitive);
}

TEST_CASE("compute_Q examples") {
  CHECK(compute_Q(parse_factored("[t; t+2]")) == 32);
  CHECK(compute_Q(parse_factored("[t]")) == 1);
  CHECK(compute_Q(parse_factored("[t^2+1]")) == 8);
  CHECK(compute_Q(parse_factored("[t; t^2+1]")) == 24);
}

TEST_CASE("salvage produces admissible exclusive rescalings") {
  for (const char* txt : {"[t; t+2]", "[t; t^2+1]"}) {
    FactoredPoly F = parse_factored(txt);
    Int Q = compute_Q(F);
    for (Int a : {Int(0), Int(1), Int(Q - 1)}) {
      FactoredPoly S = salvage(F, a);
      auto rep = structural_report(S);
      CHECK(rep.squarefree);
      CHECK(rep.admissible);
      CHECK(rep.exclusive);
      CHECK(abs(S.content) == 1);
      // factor values track F(Q t + a) up to the removed contents
      Int t = 17;
      Int lhs = F.eval(Int(Q * t + a));
      Int rhs = S.eval(t);
      CHECK(lhs % rhs == 0);
    }
  }
}

TEST_CASE("make_effective_balanced keeps top degree factors") {
  FactoredPoly F = parse_factored("[t; t^2+1]");
  auto [G, t0] = make_effective_balanced(F, 1.5);
  CHECK(G.max_factor_degree() == 2);
  CHECK(G.num_distinct() == 1);
  auto rep = structural_report(G);
  CHECK(rep.balanced);
  CHECK(rep.effective);
  // every factor value at the origin is at least 2 and increasing
  for (const auto& [g, m] : G.factors) {
    (void)m;
    CHECK(g.eval(Int(0)) >= 2);
    CHECK(g.eval(Int(1)) > g.eval(Int(0)));
  }

  FactoredPoly plain = parse_factored("[t^2+1]");
  auto [G2, s0] = make_effective_balanced(plain, 1.5);
  CHECK_THROWS_AS((void)make_effective_balanced(plain, 0.9), domain_error);
  CHECK(G2.max_factor_degree() == 2);
  auto rep2 = structural_report(G2);
  CHECK(rep2.effective);
  // the shift announces how far counts can move
  Workspace ws;
  u64 x = 200, y = 20;
  u64 orig = poly_smooth_count(plain, x, y, ws);
  u64 shifted_count = 0;
  for (u64 n = 1; n <= x; ++n)
    if (fixtures::oracle_smooth(G2.eval(Int((unsigned long)n)), y)) shifted_count++;
  i64 slack = (i64)plain.degree() + (i64)s0.get_si() + 2;
  CHECK(std::abs((i64)orig - (i64)shifted_count) <= slack);
}

TEST_CASE("fhb_transform on factored polynomials") {
  FactoredPoly f = parse_factored("[t^2+1]");
  CHECK(fhb_transform(f, 1, 0) == f);
  CHECK(fhb_transform(f, 1, 1) == parse_factored("[t^2+2*t+2]"));
  FactoredPoly g = parse_factored("[t; t+2]");
  // g(2t)/2 = 2t(2t+2)/2, factor contents fold into the leading content
  FactoredPoly h = fhb_transform(g, 2, 0);
  Int t = 7;
  CHECK(h.eval(t) * 2 == g.eval(Int(2 * t)));
  CHECK_THROWS_AS((void)fhb_transform(f, 3, 1), domain_error);
}

TEST_CASE("restrict_to_progression on factored polynomials") {
  FactoredPoly F = parse_factored("[t; t+2]");
  FactoredPoly R = restrict_to_progression(F, Int(4), Int(1));
  for (Int t : {Int(0), Int(5), Int(-3)}) {
    CHECK(R.eval(t) == F.eval(Int(4 * t + 1)));
  }
}
