#include "psmooth/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "psmooth/li.hpp"
#include "psmooth/localroots.hpp"
#include "psmooth/singular.hpp"

namespace psmooth {

namespace {

Poly radical_poly(const FactoredPoly& f) {
  Poly r = Poly::constant(1);
  for (const auto& [g, m] : f.factors) {
    (void)m;
    r = r * g;
  }
  return r;
}

std::shared_ptr<LocalRoots> radical_engine(const FactoredPoly& f) {
  if (abs(f.content) != 1)
    throw domain_error("multiplicative spec: polynomial must be primitive");
  for (const auto& [g, m] : f.factors) {
    (void)g;
    if (m != 1) throw domain_error("multiplicative spec: polynomial must be squarefree");
  }
  if (f.factors.empty()) throw domain_error("multiplicative spec: no polynomial factors");
  return std::make_shared<LocalRoots>(radical_poly(f));
}

double sigma_star_pnu(LocalRoots& lr, u64 p, unsigned nu) {
  double a = (double)lr.sigma_pnu(p, nu);
  double b = (double)lr.sigma_pnu(p, nu + 1);
  return a - b / (double)p;
}

// 1 + sum_{nu>=1} g(p^nu)/p^nu, with the tail summed geometrically once the
// term ratio locks (sigma-type functions stabilize after the discriminant
// depth, making the series eventually exactly geometric)
long double local_series(const MultFnSpec& g, u64 p) {
  long double local = 1.0L, ppow = (long double)p;
  long double prev_term = 0.0L, prev_ratio = -2.0L;
  for (unsigned nu = 1; nu <= 120; ++nu) {
    long double term = (long double)g.pp(p, nu) / ppow;
    local += term;
    if (std::abs(term) <= 1e-18L * (1.0L + std::abs(local))) return local;
    if (prev_term != 0.0L) {
      long double ratio = term / prev_term;
      if (std::abs(ratio) < 0.8L && std::abs(ratio - prev_ratio) <= 1e-12L)
        return local + term * ratio / (1.0L - ratio);
      prev_ratio = ratio;
    }
    prev_term = term;
    ppow *= (long double)p;
  }
  throw resource_error("local series did not stabilize at p = " + std::to_string(p));
}

void check_kappa(const MultFnSpec& g) {
  if (!(g.kappa >= 0)) throw domain_error("mean value constants require kappa >= 0");
}

u64 spf_limit(u64 x, Workspace& ws) {
  if (x > ws.config().spf_cap)
    throw resource_error("summation limit " + std::to_string(x) + " exceeds factor table cap");
  return std::max<u64>(x, 2);
}

}  // namespace

double MultFnSpec::eval(u64 n, const std::vector<u32>& spf) const {
  double v = 1.0;
  while (n > 1) {
    u64 p = spf[n];
    unsigned nu = 0;
    while (n % p == 0) {
      n /= p;
      ++nu;
    }
    v *= pp(p, nu);
    if (v == 0.0) return 0.0;
  }
  return v;
}

MultFnSpec mult_one() {
  MultFnSpec s;
  s.name = "one";
  s.kappa = 1.0;
  s.pp = [](u64, unsigned) { return 1.0; };
  return s;
}

MultFnSpec mult_sigma(const FactoredPoly& f) {
  auto lr = radical_engine(f);
  MultFnSpec s;
  s.name = "sigma:" + to_string(f);
  s.kappa = (double)f.num_distinct();
  s.pp = [lr](u64 p, unsigned nu) { return (double)lr->sigma_pnu(p, nu); };
  return s;
}

MultFnSpec mult_sigma_star(const FactoredPoly& f) {
  auto lr = radical_engine(f);
  MultFnSpec s;
  s.name = "sigma_star:" + to_string(f);
  s.kappa = (double)f.num_distinct();
  s.pp = [lr](u64 p, unsigned nu) { return sigma_star_pnu(*lr, p, nu); };
  return s;
}

MultFnSpec mult_G(const FactoredPoly& f) {
  auto lr = radical_engine(f);
  MultFnSpec s;
  s.name = "G:" + to_string(f);
  s.kappa = 1.0;
  s.pp = [lr](u64 p, unsigned) { return lr->G_of(p).get_d(); };
  return s;
}

MultFnSpec mult_G_sigma(const FactoredPoly& f) {
  auto lr = radical_engine(f);
  MultFnSpec s;
  s.name = "Gsigma:" + to_string(f);
  s.kappa = (double)f.num_distinct();
  s.pp = [lr](u64 p, unsigned nu) {
    return lr->G_of(p).get_d() * (double)lr->sigma_pnu(p, nu);
  };
  return s;
}

MultFnSpec mult_G_sigma_star(const FactoredPoly& f) {
  auto lr = radical_engine(f);
  MultFnSpec s;
  s.name = "Gsigma_star:" + to_string(f);
  s.kappa = (double)f.num_distinct();
  s.pp = [lr](u64 p, unsigned nu) { return lr->G_of(p).get_d() * sigma_star_pnu(*lr, p, nu); };
  return s;
}

MultFnSpec mult_G_sigma_star_mixed(const FactoredPoly& f, const Poly& g) {
  auto full = radical_engine(f);
  auto part = std::make_shared<LocalRoots>(g);
  MultFnSpec s;
  s.name = "Gsigma_star_mixed";
  s.kappa = 1.0;
  s.pp = [full, part](u64 p, unsigned nu) {
    return full->G_of(p).get_d() * sigma_star_pnu(*part, p, nu);
  };
  return s;
}

MultFnSpec make_mult_fn(const std::string& spec) {
  if (spec == "one") return mult_one();
  size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw domain_error("unknown multiplicative function spec '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  FactoredPoly f = parse_factored(spec.substr(colon + 1));
  if (kind == "sigma") return mult_sigma(f);
  if (kind == "sigma_star") return mult_sigma_star(f);
  if (kind == "G") return mult_G(f);
  if (kind == "Gsigma") return mult_G_sigma(f);
  if (kind == "Gsigma_star") return mult_G_sigma_star(f);
  throw domain_error("unknown multiplicative function kind '" + kind + "'");
}

double Mg_sum(const MultFnSpec& g, u64 x, Workspace& ws) {
  if (x < 1) throw domain_error("Mg_sum: x must be >= 1");
  auto spf = ws.spf((u32)spf_limit(x, ws));
  long double acc = 0.0L;
  for (u64 n = 1; n <= x; ++n) acc += (long double)g.eval(n, *spf) / (long double)n;
  return (double)acc;
}

double Mg_sum_coprime(const MultFnSpec& g, u64 x, u64 q, Workspace& ws) {
  if (x < 1) throw domain_error("Mg_sum_coprime: x must be >= 1");
  if (q < 1) throw domain_error("Mg_sum_coprime: q must be >= 1");
  auto spf = ws.spf((u32)spf_limit(x, ws));
  long double acc = 0.0L;
  for (u64 n = 1; n <= x; ++n) {
    if (gcd_u64(n, q) != 1) continue;
    acc += (long double)g.eval(n, *spf) / (long double)n;
  }
  return (double)acc;
}

double coprime_multisum(const std::vector<MultFnSpec>& gs, const std::vector<u64>& xs,
                        Workspace& ws) {
  if (gs.empty() || gs.size() != xs.size())
    throw domain_error("coprime_multisum: need one limit per function");
  if (gs.size() > 4) throw domain_error("coprime_multisum: at most 4 coordinates");
  for (u64 x : xs)
    if (x < 1) throw domain_error("coprime_multisum: limits must be >= 1");
  size_t k = gs.size();
  if (k == 1) return Mg_sum(gs[0], xs[0], ws);

  if (k == 2) {
    // sum over coprime pairs via Moebius inversion on the gcd
    u64 x1 = xs[0], x2 = xs[1], X = std::min(x1, x2);
    auto spf = ws.spf((u32)spf_limit(std::max(x1, x2), ws));
    std::vector<double> a(x1 + 1), b(x2 + 1);
    for (u64 n = 1; n <= x1; ++n) a[n] = gs[0].eval(n, *spf) / (double)n;
    for (u64 n = 1; n <= x2; ++n) b[n] = gs[1].eval(n, *spf) / (double)n;
    long double total = 0.0L;
    for (u64 d = 1; d <= X; ++d) {
      int mu = 1;
      u64 m = d;
      while (m > 1) {
        u64 p = (*spf)[m];
        m /= p;
        if (m % p == 0) {
          mu = 0;
          break;
        }
        mu = -mu;
      }
      if (mu == 0) continue;
      long double A = 0.0L, B = 0.0L;
      for (u64 n = d; n <= x1; n += d) A += a[n];
      for (u64 n = d; n <= x2; n += d) B += b[n];
      total += (long double)mu * A * B;
    }
    return (double)total;
  }

  double cost = 1.0;
  for (u64 x : xs) cost *= (double)x;
  if (cost > 4e9) throw resource_error("coprime_multisum: enumeration too large");
  u64 xmax = *std::max_element(xs.begin(), xs.end());
  auto spf = ws.spf((u32)spf_limit(xmax, ws));
  std::vector<std::vector<double>> vals(k);
  for (size_t i = 0; i < k; ++i) {
    vals[i].resize(xs[i] + 1);
    for (u64 n = 1; n <= xs[i]; ++n) vals[i][n] = gs[i].eval(n, *spf) / (double)n;
  }
  std::vector<u64> tuple(k);
  long double total = 0.0L;
  std::function<void(size_t, long double)> rec = [&](size_t i, long double w) {
    if (i == k) {
      total += w;
      return;
    }
    for (u64 n = 1; n <= xs[i]; ++n) {
      double v = vals[i][n];
      if (v == 0.0) continue;
      bool ok = true;
      for (size_t j = 0; j < i; ++j)
        if (std::gcd(tuple[j], n) != 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      tuple[i] = n;
      rec(i + 1, w * (long double)v);
    }
  };
  rec(0, 1.0L);
  return (double)total;
}

MeanValueConstant c_of_g(const MultFnSpec& g, u64 P, Workspace& ws) {
  check_kappa(g);
  if (P < 2) throw domain_error("c_of_g: truncation must be >= 2");
  auto pt = ws.primes(P);
  long double prod = 1.0L, half = 1.0L;
  u64 Phalf = P / 2;
  pt->for_each_prime(2, P, [&](u64 p) {
    prod *= std::pow(1.0L - 1.0L / (long double)p, (long double)g.kappa) * local_series(g, p);
    if (p <= Phalf) half = prod;
  });
  long double gam = std::tgamma((long double)g.kappa + 1.0L);
  MeanValueConstant c;
  c.value = (double)(prod / gam);
  c.value_half = (double)(half / gam);
  c.truncation = P;
  c.tail_estimate = 2.0 * std::abs(c.value - c.value_half) + 1e-12 * (1.0 + std::abs(c.value));
  return c;
}

MeanValueConstant c_q_of_g(const MultFnSpec& g, u64 q, u64 P, Workspace& ws) {
  if (q < 1) throw domain_error("c_q_of_g: q must be >= 1");
  MeanValueConstant c = c_of_g(g, P, ws);
  for (const auto& [p, e] : factor_u64(q)) {
    (void)e;
    double local = (double)local_series(g, p);
    c.value /= local;
    c.value_half /= local;
  }
  c.tail_estimate = 2.0 * std::abs(c.value - c.value_half) + 1e-12 * (1.0 + std::abs(c.value));
  return c;
}

MeanValueConstant c_multi(const std::vector<MultFnSpec>& gs, u64 P, Workspace& ws) {
  if (gs.empty()) throw domain_error("c_multi: need at least one function");
  if (P < 2) throw domain_error("c_multi: truncation must be >= 2");
  double ksum = 0;
  long double gam = 1.0L;
  for (const MultFnSpec& g : gs) {
    check_kappa(g);
    ksum += g.kappa;
    gam *= std::tgamma((long double)g.kappa + 1.0L);
  }
  auto pt = ws.primes(P);
  long double prod = 1.0L, half = 1.0L;
  u64 Phalf = P / 2;
  pt->for_each_prime(2, P, [&](u64 p) {
    // local factor uses the sum of the coordinate functions
    long double local = 1.0L, ppow = (long double)p;
    long double prev_term = 0.0L, prev_ratio = -2.0L;
    bool settled = false;
    for (unsigned nu = 1; nu <= 120 && !settled; ++nu) {
      long double term = 0.0L;
      for (const MultFnSpec& g : gs) term += (long double)g.pp(p, nu);
      term /= ppow;
      local += term;
      if (std::abs(term) <= 1e-18L * (1.0L + std::abs(local))) {
        settled = true;
        break;
      }
      if (prev_term != 0.0L) {
        long double ratio = term / prev_term;
        if (std::abs(ratio) < 0.8L && std::abs(ratio - prev_ratio) <= 1e-12L) {
          local += term * ratio / (1.0L - ratio);
          settled = true;
          break;
        }
        prev_ratio = ratio;
      }
      prev_term = term;
      ppow *= (long double)p;
    }
    if (!settled) throw resource_error("local series did not stabilize at p = " + std::to_string(p));
    prod *= std::pow(1.0L - 1.0L / (long double)p, (long double)ksum) * local;
    if (p <= Phalf) half = prod;
  });
  MeanValueConstant c;
  c.value = (double)(prod / gam);
  c.value_half = (double)(half / gam);
  c.truncation = P;
  c.tail_estimate = 2.0 * std::abs(c.value - c.value_half) + 1e-12 * (1.0 + std::abs(c.value));
  return c;
}

double delta_q(const MultFnSpec& g, u64 q) {
  if (q < 1) throw domain_error("delta_q: q must be >= 1");
  double s = 1.0;
  for (const auto& [p, e] : factor_u64(q)) {
    (void)e;
    s += g.pp(p, 1) * std::log((double)p) / (double)p;
  }
  return s;
}

double kappa_estimate(const MultFnSpec& g, u64 w, Workspace& ws) {
  if (w < 2) throw domain_error("kappa_estimate: w must be >= 2");
  auto pt = ws.primes(w);
  long double s = 0.0L;
  pt->for_each_prime(2, w, [&](u64 p) {
    s += (long double)g.pp(p, 1) * std::log((long double)p) / (long double)p;
  });
  return (double)(s - (long double)g.kappa * std::log((long double)w));
}

WeightedSum weighted_coprime_sum(const FactoredPoly& f, u64 x, double u, u64 P, Workspace& ws) {
  f.validate();
  StructuralReport rep = structural_report(f);
  if (!rep.balanced || !rep.effective || !rep.admissible || !rep.exclusive)
    throw domain_error(
        "weighted_coprime_sum: polynomial must be balanced, effective, admissible, exclusive");
  size_t k = f.factors.size();
  int d = f.degree();
  double ulim = std::min(1.0 / ((double)d - 1.0 / (double)k), 2.0 / (double)d);
  if (!(u >= 1.0 / (double)d) || !(u < ulim))
    throw domain_error("weighted_coprime_sum: u outside [1/d, min((d-1/k)^-1, 2/d))");
  if (x < 1) throw domain_error("weighted_coprime_sum: x must be >= 1");

  WeightedSum out;
  out.y = std::pow((double)x, 1.0 / u);
  SingularSeries cf = singular_series(f, P, ws);
  double du = (double)d * u;
  out.predicted = cf.value > 0
                      ? (double)x * std::pow(std::log(du), (double)k) / cf.value
                      : 0.0;

  std::vector<u64> caps(k);
  double total_caps = 0;
  for (size_t i = 0; i < k; ++i) {
    double xi = f.factors[i].first.eval(Int((unsigned long)x)).get_d();
    double c = std::floor(xi / out.y);
    caps[i] = c < 1 ? 0 : (u64)c;
    total_caps += (double)caps[i];
  }
  if (total_caps > 1e7) throw resource_error("weighted_coprime_sum: h-range too large");
  for (u64 c : caps)
    if (c == 0) return out;  // empty tuple range

  auto full = std::make_shared<LocalRoots>(radical_poly(f));
  std::vector<std::vector<double>> wt(k);  // sigma*(f_i;h) G(f;h) / h, 0 when absent
  for (size_t i = 0; i < k; ++i) {
    LocalRoots lr(f.factors[i].first);
    wt[i].assign(caps[i] + 1, 0.0);
    for (u64 h = 1; h <= caps[i]; ++h) {
      Rat s = lr.sigma_star(h);
      if (s == 0) continue;
      wt[i][h] = s.get_d() * full->G_of(h).get_d() / (double)h;
    }
  }

  std::vector<u64> tuple(k);
  long double total = 0.0L;
  std::function<void(size_t, long double)> rec = [&](size_t i, long double w) {
    if (i == k) {
      total += w * (long double)li_poly_weighted(f, tuple, (double)x);
      ++out.tuples;
      return;
    }
    for (u64 h = 1; h <= caps[i]; ++h) {
      double v = wt[i][h];
      if (v == 0.0) continue;
      bool ok = true;
      for (size_t j = 0; j < i; ++j)
        if (std::gcd(tuple[j], h) != 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      tuple[i] = h;
      rec(i + 1, w * (long double)v);
    }
  };
  rec(0, 1.0L);
  out.value = (double)total;
  return out;
}

}  // namespace psmooth
