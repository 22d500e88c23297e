#include "psmooth/li.hpp"

#include <algorithm>
#include <cmath>

#include "psmooth/real_roots.hpp"

namespace psmooth {

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = (a + m) / 2, rm = (m + b) / 2;
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, flm, m, fm);
  double right = simpson(m, fm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_rec(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         adaptive_rec(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) return 0.0;
  double m = (a + b) / 2;
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(a, fa, fm, b, fb);
  double scaled = std::max(tol, std::abs(whole) * 1e-12);
  return adaptive_rec(f, a, fa, b, fb, m, fm, whole, scaled, 48);
}

double li_classic(double x) {
  if (std::isnan(x)) throw domain_error("li: x is NaN");
  if (std::abs(x) <= 2) return 0.0;
  if (x < 0) return -li_classic(-x);
  return adaptive_simpson([](double t) { return 1.0 / std::log(t); }, 2.0, x,
                          1e-12 * std::max(1.0, x / std::log(std::max(x, 3.0))));
}

namespace {

// subdivision points where some |F_i(t)| crosses 2, within (0, x)
std::vector<double> crossing_points(const std::vector<Poly>& factors, double x) {
  std::vector<double> pts;
  Rat hi(x);
  for (const Poly& g : factors) {
    for (int s : {-2, 2}) {
      Poly shifted = g - Poly::constant(s);
      for (double r : real_roots_in(shifted, Rat(0), hi)) pts.push_back(r);
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

double li_poly(const FactoredPoly& F, double x) {
  F.validate();
  if (F.factors.empty()) throw domain_error("li needs at least one polynomial factor");
  if (std::isnan(x)) throw domain_error("li: x is NaN");
  if (x <= 0) return 0.0;
  std::vector<Poly> gs;
  for (const auto& [g, m] : F.factors) {
    (void)m;
    gs.push_back(g);
  }
  std::vector<double> cuts = crossing_points(gs, x);
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(x);
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (!(b - a > 1e-13 * std::max(1.0, std::abs(b)))) continue;
    Rat mid = (Rat(a) + Rat(b)) / 2;
    bool inside = true;
    for (const Poly& g : gs) {
      Rat v = g.eval(mid);
      if (abs(v) < 2) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    total += adaptive_simpson(
        [&](double t) {
          double prod = 1.0;
          for (const Poly& g : gs) prod *= std::log(std::abs(g.eval_double(t)));
          return 1.0 / prod;
        },
        a, b, 1e-11 * std::max(1.0, b - a));
  }
  return total;
}

double li_poly_weighted(const FactoredPoly& f, const std::vector<u64>& h, double x) {
  f.validate();
  if (f.factors.size() != h.size() || f.factors.empty())
    throw domain_error("li: need one weight per factor");
  for (u64 v : h)
    if (v < 1) throw domain_error("li: weights must be >= 1");
  if (std::isnan(x)) throw domain_error("li: x is NaN");
  double t_start = 0.0;
  for (size_t i = 0; i < h.size(); ++i) {
    const Poly& g = f.factors[i].first;
    Int bound = Int(2) * Int((unsigned long)h[i]);
    if (g.eval(Int(0)) >= bound) continue;
    Poly shifted = g - Poly::constant(bound);
    Rat top = cauchy_bound(shifted);
    auto roots = real_roots_in(shifted, Rat(0), top + 1);
    if (roots.empty())
      throw domain_error("li: factor never reaches twice its weight");
    t_start = std::max(t_start, roots.back());
  }
  if (t_start >= x) return 0.0;
  std::vector<double> hd(h.begin(), h.end());
  std::vector<Poly> gs;
  for (const auto& [g, m] : f.factors) {
    (void)m;
    gs.push_back(g);
  }
  return adaptive_simpson(
      [&](double t) {
        double prod = 1.0;
        for (size_t i = 0; i < gs.size(); ++i) prod *= std::log(gs[i].eval_double(t) / hd[i]);
        return 1.0 / prod;
      },
      t_start, x, 1e-11 * std::max(1.0, x - t_start));
}

}  // namespace psmooth
