#include "psmooth/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "psmooth/li.hpp"
#include "psmooth/localroots.hpp"
#include "psmooth/sieve.hpp"
#include "psmooth/singular.hpp"

namespace psmooth {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void finish(ExperimentReport& rep, const Timer& t) {
  rep.timestamp = iso_now();
  rep.runtime_seconds = t.seconds();
  for (const PointRecord& pt : rep.points)
    if (!pt.rejected && !pt.pass) rep.pass = false;
}

u64 totient_u64(u64 q) {
  u64 r = q;
  for (const auto& [p, e] : factor_u64(q)) {
    (void)e;
    r -= r / p;
  }
  return r;
}

std::string fmt_u64(u64 v) { return std::to_string(v); }

std::string fmt_grid(const std::vector<u64>& v) {
  std::ostringstream s;
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::string fmt_grid(const std::vector<double>& v) {
  std::ostringstream s;
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

std::string ExperimentReport::to_json() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["name"] = name;
  j["kind"] = kind;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  j["tolerance"] = tolerance;
  j["truncation"] = truncation;
  j["seed"] = seed;
  ordered_json pts = ordered_json::array();
  for (const PointRecord& pt : points) {
    ordered_json p;
    ordered_json pp = ordered_json::object();
    for (const auto& [k, v] : pt.params) pp[k] = v;
    p["params"] = pp;
    p["exact"] = pt.exact;
    p["prediction"] = pt.prediction;
    p["abs_error"] = pt.abs_error;
    p["normalized"] = pt.normalized;
    p["pass"] = pt.pass;
    p["rejected"] = pt.rejected;
    p["note"] = pt.note;
    pts.push_back(p);
  }
  j["points"] = pts;
  j["pass"] = pass;
  j["meta"] = ordered_json{{"timestamp", timestamp}, {"runtime_seconds", runtime_seconds}};
  return j.dump(2);
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "experiment";
  if (!points.empty())
    for (const auto& [k, v] : points.front().params) {
      (void)v;
      out << ',' << k;
    }
  out << ",exact,prediction,abs_error,normalized,pass,rejected,note\n";
  std::ostringstream vals;
  vals.precision(17);
  for (const PointRecord& pt : points) {
    vals << name;
    for (const auto& [k, v] : pt.params) {
      (void)k;
      vals << ',' << v;
    }
    vals << ',' << pt.exact << ',' << pt.prediction << ',' << pt.abs_error << ','
         << pt.normalized << ',' << (pt.pass ? 1 : 0) << ',' << (pt.rejected ? 1 : 0) << ','
         << pt.note << '\n';
  }
  out << vals.str();
  return out.str();
}

ExperimentReport check_inclusion_exclusion(const FactoredPoly& F, u64 x, u64 y, Workspace& ws) {
  Timer t;
  F.validate();
  if (abs(F.content) != 1)
    throw domain_error("check_inclusion_exclusion: polynomial must be primitive");
  ExperimentReport rep;
  rep.name = "inclusion_exclusion";
  rep.kind = "identity";
  rep.parameters = {{"F", to_string(F)}, {"x", fmt_u64(x)}, {"y", fmt_u64(y)}};
  u64 lhs = poly_smooth_count(F, x, y, ws);
  size_t k = F.factors.size();
  long long rhs = (long long)x;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    FactoredPoly sub;
    sub.sign = 1;
    sub.content = 1;
    for (size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.factors.push_back(F.factors[i]);
    u64 m = m_count(sub, x, y, ws);
    rhs += (std::popcount(mask) & 1) ? -(long long)m : (long long)m;
  }
  PointRecord pt;
  pt.params = {{"x", (double)x}, {"y", (double)y}};
  pt.exact = (double)lhs;
  pt.prediction = (double)rhs;
  pt.abs_error = std::abs((double)lhs - (double)rhs);
  pt.normalized = pt.abs_error;
  pt.pass = ((long long)lhs == rhs);
  rep.points.push_back(pt);
  finish(rep, t);
  return rep;
}

ExperimentReport theorem_main_experiment(const FactoredPoly& F, const std::vector<u64>& xs,
                                         const std::vector<double>& us, u64 P, double band,
                                         Workspace& ws) {
  Timer t;
  F.validate();
  ExperimentReport rep;
  rep.name = "smooth_values_asymptotic";
  rep.kind = "asymptotic";
  rep.tolerance = band;
  rep.truncation = P;
  rep.parameters = {{"F", to_string(F)},
                    {"x_grid", fmt_grid(xs)},
                    {"u_grid", fmt_grid(us)},
                    {"band", std::to_string(band)}};
  if (F.factors.empty()) throw domain_error("smooth-values experiment: no polynomial factors");
  int d = F.max_factor_degree();
  unsigned kk = F.count_max_degree();
  double dk = (double)d - 1.0 / (double)kk;
  double ulim = dk <= 0 ? std::numeric_limits<double>::infinity() : 1.0 / dk;
  const DickmanTable& rho = ws.dickman();
  for (double u : us) {
    if (!(u > 0) || !(u < ulim)) {
      PointRecord pt;
      pt.params = {{"x", 0.0}, {"u", u}};
      pt.rejected = true;
      pt.note = "u outside (0, (d-1/k)^{-1})";
      rep.points.push_back(pt);
      continue;
    }
    double pred = 1.0;
    bool in_range = true;
    for (const auto& [g, m] : F.factors) {
      (void)m;
      double du = (double)g.degree() * u;
      if (du > rho.u_max()) {
        in_range = false;
        break;
      }
      pred *= rho.rho(du);
    }
    for (u64 x : xs) {
      PointRecord pt;
      pt.params = {{"x", (double)x}, {"u", u}};
      if (!in_range) {
        pt.rejected = true;
        pt.note = "deg*u beyond rho table";
        rep.points.push_back(pt);
        continue;
      }
      double y = std::pow((double)x, 1.0 / u);
      u64 yi = (u64)std::floor(y);
      u64 count = poly_smooth_count(F, x, yi, ws);
      double ratio = (double)count / (double)x;
      pt.exact = (double)count;
      pt.prediction = pred;
      pt.abs_error = std::abs(ratio - pred);
      pt.normalized = (ratio - pred) * std::log((double)x);
      pt.pass = pt.abs_error <= band;
      rep.points.push_back(pt);
    }
  }
  finish(rep, t);
  return rep;
}

ExperimentReport theorem_prime_experiment(i64 a, const std::vector<u64>& xs,
                                          const std::vector<double>& us, double band,
                                          Workspace& ws) {
  Timer t;
  ExperimentReport rep;
  rep.name = "shifted_primes_asymptotic";
  rep.kind = "asymptotic";
  rep.tolerance = band;
  rep.parameters = {{"a", std::to_string(a)},
                    {"x_grid", fmt_grid(xs)},
                    {"u_grid", fmt_grid(us)},
                    {"band", std::to_string(band)}};
  const DickmanTable& rho = ws.dickman();
  u64 min_x = a > 0 ? (u64)a + 1 : 1;
  for (double u : us) {
    bool u_ok = u > 0 && u < 3;
    for (u64 x : xs) {
      PointRecord pt;
      pt.params = {{"x", (double)x}, {"u", u}};
      if (!u_ok) {
        pt.rejected = true;
        pt.note = "u outside (0,3)";
        rep.points.push_back(pt);
        continue;
      }
      if (x < min_x || x < 2) {
        pt.rejected = true;
        pt.note = "x below 1 + max(a,0)";
        rep.points.push_back(pt);
        continue;
      }
      double y = std::pow((double)x, 1.0 / u);
      u64 count = shifted_prime_smooth_count(a, x, (u64)std::floor(y), ws);
      u64 pi = prime_count(x, ws);
      double ratio = (double)count / (double)pi;
      double pred = rho.rho(u);
      pt.exact = (double)count;
      pt.prediction = pred;
      pt.abs_error = std::abs(ratio - pred);
      pt.normalized = (ratio - pred) * std::log((double)x);
      pt.pass = pt.abs_error <= band;
      rep.points.push_back(pt);
    }
  }
  finish(rep, t);
  return rep;
}

ExperimentReport hypothesis_AP_probe(u64 x, u64 y, u64 q, i64 a, Workspace& ws) {
  Timer t;
  if (q < 1) throw domain_error("AP probe: modulus must be positive");
  if (y < 1 || y > x) throw domain_error("AP probe: need 1 <= y <= x");
  i64 m = (i64)q;
  u64 res = (u64)(((a % m) + m) % m);
  if (gcd_u64(res == 0 ? q : res, q) != 1)
    throw domain_error("AP probe: residue not coprime to modulus");
  ExperimentReport rep;
  rep.name = "primes_in_segment_ap";
  rep.kind = "probe";
  rep.tolerance = 5.0;
  rep.parameters = {{"x", fmt_u64(x)}, {"y", fmt_u64(y)}, {"q", fmt_u64(q)},
                    {"a", std::to_string(a)}};
  u64 count = prime_count_ap(x, q, a, ws) - prime_count_ap(x - y, q, a, ws);
  double phi = (double)totient_u64(q);
  double lx = std::log((double)x);
  double pred_direct = (double)y / (phi * lx);
  double pred_li = (li_classic((double)x) - li_classic((double)(x - y))) / phi;
  double scale = phi * lx * lx / (double)y;
  for (auto [pred, note] : {std::pair<double, const char*>{pred_direct, "y/(phi(q) log x) form"},
                            std::pair<double, const char*>{pred_li, "li difference form"}}) {
    PointRecord pt;
    pt.params = {{"x", (double)x}, {"y", (double)y}, {"q", (double)q}, {"a", (double)a}};
    pt.exact = (double)count;
    pt.prediction = pred;
    pt.abs_error = std::abs((double)count - pred);
    pt.normalized = ((double)count - pred) * scale;
    pt.pass = std::abs(pt.normalized) <= rep.tolerance;
    pt.note = note;
    rep.points.push_back(pt);
  }
  finish(rep, t);
  return rep;
}

ExperimentReport hypothesis_UH_probe(const FactoredPoly& F, const std::vector<u64>& xs, u64 P,
                                     Workspace& ws) {
  Timer t;
  ExperimentReport rep;
  rep.name = "uniform_hypothesis_probe";
  rep.kind = "probe";
  rep.truncation = P;
  rep.parameters = {{"F", to_string(F)}, {"x_grid", fmt_grid(xs)}, {"P", fmt_u64(P)}};
  unsigned K = F.num_distinct();
  for (u64 x : xs) {
    ErrorTerm et = error_term(F, x, P, ws);
    PointRecord pt;
    pt.params = {{"x", (double)x}};
    pt.exact = (double)et.prime_values;
    pt.prediction = et.constant * et.li;
    pt.abs_error = std::abs(et.value);
    double denom = et.constant * (double)x / std::pow(std::log((double)x), (double)(K + 1)) + 1.0;
    pt.normalized = et.value / denom;
    pt.pass = true;
    if (!et.admissible) pt.note = "non-admissible: E = count";
    if (et.used_probable_prime)
      pt.note += std::string(pt.note.empty() ? "" : "; ") + "probabilistic primality beyond 2^63";
    rep.points.push_back(pt);
  }
  finish(rep, t);
  return rep;
}

ExperimentReport check_cflb_identity(const FactoredPoly& f, const std::vector<u64>& hs, u64 x,
                                     u64 P, Workspace& ws) {
  Timer t;
  f.validate();
  StructuralReport sr = structural_report(f);
  if (!sr.balanced || !sr.effective || !sr.admissible || !sr.exclusive)
    throw domain_error("cflb identity: polynomial must be balanced, effective, admissible, exclusive");
  if (hs.size() != f.factors.size())
    throw domain_error("cflb identity: need one h per factor");
  for (size_t i = 0; i < hs.size(); ++i) {
    if (hs[i] < 1) throw domain_error("cflb identity: h must be >= 1");
    for (size_t j = 0; j < i; ++j)
      if (gcd_u64(hs[i], hs[j]) != 1)
        throw domain_error("cflb identity: h values must be pairwise coprime");
  }
  ExperimentReport rep;
  rep.name = "transformed_constant_sum";
  rep.kind = "identity";
  rep.truncation = P;
  rep.parameters = {{"f", to_string(f)}, {"h", fmt_grid(hs)}, {"x", fmt_u64(x)},
                    {"P", fmt_u64(P)}};
  u64 H = 1;
  for (u64 h : hs) {
    if (H > (u64)-1 / h) throw resource_error("cflb identity: modulus product overflow");
    H *= h;
  }
  std::vector<Poly> fs;
  for (const auto& [g, m] : f.factors) {
    (void)m;
    fs.push_back(g);
  }
  std::vector<u64> bs = root_set_multi(fs, hs);
  long double lhs = 0.0L, lhs_tail = 0.0L;
  for (u64 b : bs) {
    FactoredPoly fb = fhb_transform(f, Int((unsigned long)H), Int((unsigned long)b));
    if (abs(fb.content) != 1) continue;  // a prime divides every value: C = 0
    SingularSeries sb = singular_series(fb, P, ws);
    lhs += (long double)sb.value;
    lhs_tail += (long double)sb.tail_estimate;
  }
  SingularSeries sf = singular_series(f, P, ws);
  LocalRoots full(([&] {
    Poly r = Poly::constant(1);
    for (const Poly& g : fs) r = r * g;
    return r;
  })());
  long double rhs = (long double)sf.value;
  long double weight = 1.0L;
  for (size_t i = 0; i < fs.size(); ++i) {
    LocalRoots lr(fs[i]);
    weight *= (long double)full.G_of(hs[i]).get_d() * (long double)lr.sigma_star(hs[i]).get_d();
  }
  rhs *= weight;
  double tol = (double)lhs_tail + std::abs((double)weight) * sf.tail_estimate +
               1e-9 * (1.0 + std::abs((double)rhs));
  PointRecord pt;
  pt.params = {{"H", (double)H}, {"roots", (double)bs.size()}};
  pt.exact = (double)lhs;
  pt.prediction = (double)rhs;
  pt.abs_error = std::abs((double)(lhs - rhs));
  pt.normalized = pt.abs_error / std::max(std::abs((double)rhs), 1e-300);
  pt.pass = pt.abs_error <= tol;
  rep.tolerance = tol;
  rep.points.push_back(pt);
  finish(rep, t);
  return rep;
}

}  // namespace psmooth
