#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psmooth/factored.hpp"
#include "psmooth/li.hpp"
#include "psmooth/localroots.hpp"
#include "psmooth/meanvalue.hpp"
#include "psmooth/sieve.hpp"
#include "psmooth/singular.hpp"
#include "psmooth/verify.hpp"

namespace {

using psmooth::domain_error;
using psmooth::FactoredPoly;
using psmooth::i64;
using psmooth::Int;
using psmooth::Poly;
using psmooth::Rat;
using psmooth::u64;
using psmooth::Workspace;
using ordered_json = nlohmann::ordered_json;

struct Globals {
  std::string config_file;
  std::vector<std::string> sets;
  std::string format;
  u64 truncation = 0;
  long long threads = -1;
  std::string cache_dir;
  bool progress = false;
};

psmooth::RunConfig make_config(const Globals& g) {
  psmooth::RunConfig cfg;
  if (!g.config_file.empty()) cfg = psmooth::RunConfig::from_file(g.config_file);
  for (const std::string& kv : g.sets) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) throw domain_error("--set expects key=value, got " + kv);
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!g.format.empty()) cfg.set("format", g.format);
  if (g.truncation) cfg.truncation = g.truncation;
  if (g.threads >= 0) cfg.threads = (unsigned)g.threads;
  if (!g.cache_dir.empty()) cfg.cache_dir = g.cache_dir;
  if (g.progress) cfg.progress = true;
  return cfg;
}

std::string scalar_text(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// one result object rendered in the selected format; "fields" keys are the
// output schema, the first field is the headline value in plain mode
void emit_result(const std::string& format, const std::string& name,
                 const std::vector<std::pair<std::string, std::string>>& params,
                 const ordered_json& fields) {
  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["name"] = name;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["parameters"] = p;
    j["result"] = fields;
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::string hdr, row;
    for (const auto& [k, v] : params) {
      hdr += k + ",";
      row += v + ",";
    }
    for (auto it = fields.begin(); it != fields.end(); ++it) {
      hdr += it.key() + ",";
      row += scalar_text(it.value()) + ",";
    }
    if (!hdr.empty()) hdr.pop_back(), row.pop_back();
    std::cout << hdr << "\n" << row << "\n";
  } else {
    if (fields.size() == 1) {
      std::cout << scalar_text(fields.begin().value()) << "\n";
    } else {
      for (auto it = fields.begin(); it != fields.end(); ++it)
        std::cout << it.key() << ": " << scalar_text(it.value()) << "\n";
    }
  }
}

void emit_rows(const std::string& format, const std::string& name,
               const std::vector<std::string>& cols, const std::vector<ordered_json>& rows) {
  if (format == "json") {
    ordered_json j;
    j["schema_version"] = 1;
    j["name"] = name;
    j["columns"] = cols;
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    std::string sep = format == "csv" ? "," : " ";
    if (format == "csv") {
      for (size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
      std::cout << "\n";
    }
    for (const ordered_json& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? sep : "") << scalar_text(r[i]);
      std::cout << "\n";
    }
  }
}

void emit_report(const std::string& format, const psmooth::ExperimentReport& rep) {
  if (format == "json") {
    std::cout << rep.to_json() << "\n";
    return;
  }
  if (format == "csv") {
    std::cout << rep.to_csv();
    return;
  }
  std::cout << rep.name << " (" << rep.kind << ")\n";
  for (const psmooth::PointRecord& pt : rep.points) {
    std::ostringstream line;
    for (const auto& [k, v] : pt.params) line << k << "=" << v << " ";
    if (pt.rejected) {
      line << "rejected: " << pt.note;
    } else {
      line << "exact=" << pt.exact << " prediction=" << pt.prediction
           << " abs_error=" << pt.abs_error << " normalized=" << pt.normalized << " "
           << (pt.pass ? "ok" : "FAIL");
      if (!pt.note.empty()) line << " (" << pt.note << ")";
    }
    std::cout << "  " << line.str() << "\n";
  }
  std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
}

// --poly for FactoredPoly operations: factored grammar, or a bare polynomial
// taken as a single declared factor
FactoredPoly arg_factored(const std::string& s) {
  if (s.find('[') != std::string::npos) return psmooth::parse_factored(s);
  return FactoredPoly::from_poly(psmooth::parse_poly(s));
}

std::vector<u64> parse_u64_list(const std::string& s) {
  std::vector<u64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    double d = std::stod(item, &pos);
    if (pos != item.size() || d < 0 || d > 1.8e19)
      throw domain_error("bad integer list entry: " + item);
    out.push_back((u64)d);
  }
  if (out.empty()) throw domain_error("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw domain_error("bad number list entry: " + item);
  }
  if (out.empty()) throw domain_error("empty number list");
  return out;
}

ordered_json rat_fields(const Rat& r) {
  ordered_json f;
  f["value"] = r.get_str();
  f["decimal"] = r.get_d();
  return f;
}

struct Ctx {
  Globals globals;
  int failures = 0;  // verify subcommands with a failing report
};

void add_rho(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("rho", "Dickman rho at a point");
  auto u = std::make_shared<double>(0);
  sc->add_option("--u", *u, "argument")->required();
  sc->callback([&ctx, u] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    if (*u > ws.dickman().u_max())
      throw domain_error("u beyond the rho table; raise rho_umax");
    double v = ws.dickman().rho(*u);
    emit_result(cfg.format, "rho", {{"u", std::to_string(*u)}}, {{"value", v}});
  });
}

void add_rho_table(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("rho-table", "Dickman rho on a grid");
  auto umax = std::make_shared<double>(0);
  auto step = std::make_shared<double>(0.1);
  sc->add_option("--u-max", *umax, "largest u")->required();
  sc->add_option("--step", *step, "grid step (default 0.1)");
  sc->callback([&ctx, umax, step] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    if (*step <= 0) throw domain_error("step must be positive");
    if (*umax > ws.dickman().u_max())
      throw domain_error("u beyond the rho table; raise rho_umax");
    std::vector<ordered_json> rows;
    for (double uu = 0; uu <= *umax + 1e-12; uu += *step)
      rows.push_back(ordered_json::array({uu, ws.dickman().rho(uu)}));
    emit_rows(cfg.format, "rho_table", {"u", "rho"}, rows);
  });
}

void add_li(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("li", "logarithmic integral li(x), zero for |x| <= 2");
  auto x = std::make_shared<double>(0);
  sc->add_option("--x", *x, "endpoint")->required();
  sc->callback([&ctx, x] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    emit_result(cfg.format, "li", {{"x", std::to_string(*x)}}, {{"value", psmooth::li_classic(*x)}});
  });
}

void add_li_poly(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("li-poly", "polynomial logarithmic integral");
  auto poly = std::make_shared<std::string>();
  auto x = std::make_shared<double>(0);
  sc->add_option("--poly", *poly, "factored polynomial")->required();
  sc->add_option("--x", *x, "endpoint")->required();
  sc->callback([&ctx, poly, x] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly F = arg_factored(*poly);
    emit_result(cfg.format, "li_poly", {{"poly", to_string(F)}, {"x", std::to_string(*x)}},
                {{"value", psmooth::li_poly(F, *x)}});
  });
}

void add_local(CLI::App& app, Ctx& ctx) {
  struct Spec {
    const char* name;
    const char* help;
  };
  for (Spec s : {Spec{"sigma", "root count sigma(f;n)"},
                 Spec{"sigma-star", "sigma*(f;n) = sigma(f;n) - sigma(f;n p)/p per prime power"},
                 Spec{"gvalue", "G(f;n) = prod_{p|n} (1 - sigma(f;p)/p)^-1"}}) {
    auto* sc = app.add_subcommand(s.name, s.help);
    auto poly = std::make_shared<std::string>();
    auto n = std::make_shared<u64>(0);
    sc->add_option("--poly", *poly, "polynomial")->required();
    sc->add_option("--n", *n, "modulus")->required();
    std::string name = s.name;
    sc->callback([&ctx, poly, n, name] {
      psmooth::RunConfig cfg = make_config(ctx.globals);
      Poly f = psmooth::parse_poly(*poly);
      if (*n < 1) throw domain_error("n must be >= 1");
      std::vector<std::pair<std::string, std::string>> params = {{"poly", to_string(f)},
                                                                 {"n", std::to_string(*n)}};
      if (name == "sigma")
        emit_result(cfg.format, name, params, {{"value", psmooth::sigma(f, *n)}});
      else if (name == "sigma-star")
        emit_result(cfg.format, name, params, rat_fields(psmooth::sigma_star(f, *n)));
      else
        emit_result(cfg.format, name, params, rat_fields(psmooth::G_of(f, *n)));
    });
  }
}

void add_roots(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("roots", "residues b in [1,n] with n | f(b)");
  auto poly = std::make_shared<std::string>();
  auto n = std::make_shared<u64>(0);
  sc->add_option("--poly", *poly, "polynomial")->required();
  sc->add_option("--n", *n, "modulus")->required();
  sc->callback([&ctx, poly, n] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Poly f = psmooth::parse_poly(*poly);
    if (*n < 1) throw domain_error("n must be >= 1");
    std::vector<ordered_json> rows;
    for (u64 b : psmooth::root_set(f, *n)) rows.push_back(ordered_json::array({b}));
    emit_rows(cfg.format, "roots", {"b"}, rows);
  });
}

void add_constant(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("constant", "singular series C(F), truncated Euler product");
  auto poly = std::make_shared<std::string>();
  auto P = std::make_shared<u64>(0);
  sc->add_option("--poly", *poly, "factored polynomial")->required();
  sc->add_option("--P", *P, "truncation prime (default from config)");
  sc->callback([&ctx, poly, P] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    FactoredPoly F = arg_factored(*poly);
    u64 trunc = *P ? *P : cfg.truncation;
    psmooth::SingularSeries c = psmooth::singular_series(F, trunc, ws);
    emit_result(cfg.format, "constant",
                {{"poly", to_string(F)}, {"P", std::to_string(trunc)}},
                {{"value", c.value},
                 {"admissible", c.admissible},
                 {"tail_estimate", c.tail_estimate}});
  });
}

void add_transform(CLI::App& app, Ctx& ctx) {
  auto* tr = app.add_subcommand("transform", "polynomial rewrites");
  tr->require_subcommand(1);

  auto* fhb = tr->add_subcommand("fhb", "f(h t + b)/h for h | f(b)");
  fhb->set_help_flag("--help", "print help");
  auto poly1 = std::make_shared<std::string>();
  auto h = std::make_shared<u64>(0);
  auto b = std::make_shared<u64>(0);
  fhb->add_option("--poly", *poly1, "factored polynomial")->required();
  fhb->add_option("--h", *h, "scale")->required();
  fhb->add_option("--b", *b, "root of f mod h, in [1,h]")->required();
  fhb->callback([&ctx, poly1, h, b] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly out = psmooth::fhb_transform(arg_factored(*poly1), Int((unsigned long)*h),
                                              Int((unsigned long)*b));
    emit_result(cfg.format, "transform_fhb",
                {{"h", std::to_string(*h)}, {"b", std::to_string(*b)}},
                {{"poly", to_string(out)}});
  });

  auto* re = tr->add_subcommand("restrict", "F(q t + a)");
  auto poly2 = std::make_shared<std::string>();
  auto q = std::make_shared<u64>(0);
  auto a = std::make_shared<u64>(0);
  re->add_option("--poly", *poly2, "factored polynomial")->required();
  re->add_option("--q", *q, "modulus")->required();
  re->add_option("--a", *a, "residue in [0,q)")->required();
  re->callback([&ctx, poly2, q, a] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly out = psmooth::restrict_to_progression(
        arg_factored(*poly2), Int((unsigned long)*q), Int((unsigned long)*a));
    emit_result(cfg.format, "transform_restrict",
                {{"q", std::to_string(*q)}, {"a", std::to_string(*a)}},
                {{"poly", to_string(out)}});
  });

  auto* sal = tr->add_subcommand("salvage", "F(Q t + a) with factors re-primitivized");
  auto poly3 = std::make_shared<std::string>();
  auto a3 = std::make_shared<u64>(0);
  sal->add_option("--poly", *poly3, "factored polynomial")->required();
  sal->add_option("--a", *a3, "residue in [0,Q)")->required();
  sal->callback([&ctx, poly3, a3] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly F = arg_factored(*poly3);
    Int Q = psmooth::compute_Q(F);
    FactoredPoly out = psmooth::salvage(F, Int((unsigned long)*a3));
    emit_result(cfg.format, "transform_salvage",
                {{"a", std::to_string(*a3)}},
                {{"Q", Q.get_str()}, {"poly", to_string(out)}});
  });

  auto* eff = tr->add_subcommand("effectivize", "same-degree factors shifted to g(t0)>=2, g'>=1");
  auto poly4 = std::make_shared<std::string>();
  auto alpha = std::make_shared<double>(0);
  eff->add_option("--poly", *poly4, "factored polynomial")->required();
  eff->add_option("--alpha", *alpha, "smoothness exponent, > d-1")->required();
  eff->callback([&ctx, poly4, alpha] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    auto [out, t0] = psmooth::make_effective_balanced(arg_factored(*poly4), *alpha);
    emit_result(cfg.format, "transform_effectivize",
                {{"alpha", std::to_string(*alpha)}},
                {{"poly", to_string(out)}, {"t0", t0.get_str()}});
  });
}

void add_q_of(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("q-of", "modulus Q for the admissible-exclusive rescaling");
  auto poly = std::make_shared<std::string>();
  sc->add_option("--poly", *poly, "factored polynomial")->required();
  sc->callback([&ctx, poly] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly F = arg_factored(*poly);
    emit_result(cfg.format, "q_of", {{"poly", to_string(F)}},
                {{"value", psmooth::compute_Q(F).get_str()}});
  });
}

void add_structure(CLI::App& app, Ctx& ctx) {
  auto* sc = app.add_subcommand("structure", "structural predicates with failure witnesses");
  auto poly = std::make_shared<std::string>();
  sc->add_option("--poly", *poly, "factored polynomial")->required();
  sc->callback([&ctx, poly] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    FactoredPoly F = arg_factored(*poly);
    psmooth::StructuralReport r = psmooth::structural_report(F);
    ordered_json fields;
    fields["squarefree"] = r.squarefree;
    fields["primitive"] = r.primitive;
    fields["balanced"] = r.balanced;
    fields["effective"] = r.effective;
    fields["admissible"] = r.admissible;
    fields["exclusive"] = r.exclusive;
    ordered_json w = ordered_json::object();
    for (const auto& [k, v] : r.witness) w[k] = v;
    fields["witness"] = w;
    emit_result(cfg.format, "structure", {{"poly", to_string(F)}}, fields);
  });
}

void add_count(CLI::App& app, Ctx& ctx) {
  auto* co = app.add_subcommand("count", "exact sieve counts");
  co->require_subcommand(1);

  struct Args {
    std::string poly;
    u64 x = 0, y = 0, q = 0;
    i64 a = 0;
  };

  auto add = [&](const char* name, const char* help, bool wantPoly, bool wantY, bool wantQ,
                 bool wantA, auto run) {
    auto* sc = co->add_subcommand(name, help);
    auto args = std::make_shared<Args>();
    if (wantPoly) sc->add_option("--poly", args->poly, "factored polynomial")->required();
    sc->add_option("--x", args->x, "range end")->required();
    if (wantY) sc->add_option("--y", args->y, "smoothness bound")->required();
    if (wantQ) sc->add_option("--q", args->q, "modulus")->required();
    if (wantA) sc->add_option("--a", args->a, "residue / shift")->required();
    sc->callback([&ctx, args, run] {
      psmooth::RunConfig cfg = make_config(ctx.globals);
      Workspace ws(cfg);
      run(cfg, ws, *args);
    });
  };

  add("smooth", "Psi(x,y): y-smooth n <= x", false, true, false, false,
      [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        emit_result(cfg.format, "count_smooth",
                    {{"x", std::to_string(a.x)}, {"y", std::to_string(a.y)}},
                    {{"value", psmooth::smooth_count(a.x, a.y, ws)}});
      });
  add("smooth-ap", "y-smooth n <= x with n = a mod q", false, true, true, true,
      [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        emit_result(cfg.format, "count_smooth_ap",
                    {{"x", std::to_string(a.x)},
                     {"y", std::to_string(a.y)},
                     {"q", std::to_string(a.q)},
                     {"a", std::to_string(a.a)}},
                    {{"value", psmooth::smooth_count_ap(a.x, a.y, a.q, a.a, ws)}});
      });
  add("poly-smooth", "Psi(F;x,y): n <= x with F(n) y-smooth", true, true, false, false,
      [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        FactoredPoly F = arg_factored(a.poly);
        emit_result(cfg.format, "count_poly_smooth",
                    {{"poly", to_string(F)},
                     {"x", std::to_string(a.x)},
                     {"y", std::to_string(a.y)}},
                    {{"value", psmooth::poly_smooth_count(F, a.x, a.y, ws)}});
      });
  add("shifted-prime", "Phi_a(x,y): primes q <= x with q-a y-smooth", false, true, false, true,
      [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        emit_result(cfg.format, "count_shifted_prime",
                    {{"a", std::to_string(a.a)},
                     {"x", std::to_string(a.x)},
                     {"y", std::to_string(a.y)}},
                    {{"value", psmooth::shifted_prime_smooth_count(a.a, a.x, a.y, ws)}});
      });
  add("prime-values", "pi(F;x): n <= x with every factor value (+-) prime", true, false, false,
      false, [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        FactoredPoly F = arg_factored(a.poly);
        bool probable = false;
        u64 v = psmooth::prime_values_count(F, a.x, ws, &probable);
        if (probable)
          std::cerr << "note: primality beyond 2^63 tested probabilistically\n";
        emit_result(cfg.format, "count_prime_values",
                    {{"poly", to_string(F)}, {"x", std::to_string(a.x)}},
                    {{"value", v}, {"probable_prime", probable}});
      });
  add("prime-ap", "primes p <= x with p = a mod q", false, false, true, true,
      [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        emit_result(cfg.format, "count_prime_ap",
                    {{"x", std::to_string(a.x)},
                     {"q", std::to_string(a.q)},
                     {"a", std::to_string(a.a)}},
                    {{"value", psmooth::prime_count_ap(a.x, a.q, a.a, ws)}});
      });
  add("m-count", "M(f;x,y): n <= x with every prime factor of f(n) above y", true, true, false,
      false, [](const psmooth::RunConfig& cfg, Workspace& ws, const Args& a) {
        FactoredPoly F = arg_factored(a.poly);
        emit_result(cfg.format, "count_m",
                    {{"poly", to_string(F)},
                     {"x", std::to_string(a.x)},
                     {"y", std::to_string(a.y)}},
                    {{"value", psmooth::m_count(F, a.x, a.y, ws)}});
      });
}

void add_meanvalue(CLI::App& app, Ctx& ctx) {
  auto* mv = app.add_subcommand("meanvalue", "multiplicative mean values and constants");
  mv->require_subcommand(1);

  auto* mg = mv->add_subcommand("mg", "sum of g(n)/n over n <= x");
  auto g1 = std::make_shared<std::string>();
  auto x1 = std::make_shared<u64>(0);
  mg->add_option("--g", *g1, "function spec, e.g. one or sigma:t^2+1")->required();
  mg->add_option("--x", *x1, "range end")->required();
  mg->callback([&ctx, g1, x1] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    psmooth::MultFnSpec g = psmooth::make_mult_fn(*g1);
    emit_result(cfg.format, "meanvalue_mg", {{"g", *g1}, {"x", std::to_string(*x1)}},
                {{"value", psmooth::Mg_sum(g, *x1, ws)}});
  });

  auto* mgc = mv->add_subcommand("mg-coprime", "same sum restricted to (n,q)=1");
  auto g2 = std::make_shared<std::string>();
  auto x2 = std::make_shared<u64>(0);
  auto q2 = std::make_shared<u64>(0);
  mgc->add_option("--g", *g2, "function spec")->required();
  mgc->add_option("--x", *x2, "range end")->required();
  mgc->add_option("--q", *q2, "coprimality modulus")->required();
  mgc->callback([&ctx, g2, x2, q2] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    psmooth::MultFnSpec g = psmooth::make_mult_fn(*g2);
    emit_result(cfg.format, "meanvalue_mg_coprime",
                {{"g", *g2}, {"x", std::to_string(*x2)}, {"q", std::to_string(*q2)}},
                {{"value", psmooth::Mg_sum_coprime(g, *x2, *q2, ws)}});
  });

  auto* ms = mv->add_subcommand("multisum", "pairwise-coprime tuple sum of prod g_i(n_i)/n_i");
  auto gs = std::make_shared<std::vector<std::string>>();
  auto xs = std::make_shared<std::string>();
  ms->add_option("--g", *gs, "function spec, repeat once per coordinate")->required();
  ms->add_option("--x", *xs, "comma-separated per-coordinate bounds")->required();
  ms->callback([&ctx, gs, xs] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    std::vector<u64> bounds = parse_u64_list(*xs);
    if (bounds.size() != gs->size())
      throw domain_error("multisum: need as many --g as bounds in --x");
    std::vector<psmooth::MultFnSpec> fns;
    for (const std::string& s : *gs) fns.push_back(psmooth::make_mult_fn(s));
    emit_result(cfg.format, "meanvalue_multisum",
                {{"k", std::to_string(fns.size())}, {"x", *xs}},
                {{"value", psmooth::coprime_multisum(fns, bounds, ws)}});
  });

  auto* cc = mv->add_subcommand("c", "mean value constant c(g)");
  auto g3 = std::make_shared<std::string>();
  auto P3 = std::make_shared<u64>(0);
  cc->add_option("--g", *g3, "function spec")->required();
  cc->add_option("--P", *P3, "truncation prime (default from config)");
  cc->callback([&ctx, g3, P3] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P3 ? *P3 : cfg.truncation;
    psmooth::MeanValueConstant c = psmooth::c_of_g(psmooth::make_mult_fn(*g3), trunc, ws);
    emit_result(cfg.format, "meanvalue_c", {{"g", *g3}, {"P", std::to_string(trunc)}},
                {{"value", c.value}, {"tail_estimate", c.tail_estimate}});
  });

  auto* cq = mv->add_subcommand("cq", "constant c_q(g) with the p | q factors removed");
  auto g4 = std::make_shared<std::string>();
  auto q4 = std::make_shared<u64>(0);
  auto P4 = std::make_shared<u64>(0);
  cq->add_option("--g", *g4, "function spec")->required();
  cq->add_option("--q", *q4, "modulus")->required();
  cq->add_option("--P", *P4, "truncation prime (default from config)");
  cq->callback([&ctx, g4, q4, P4] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P4 ? *P4 : cfg.truncation;
    psmooth::MeanValueConstant c = psmooth::c_q_of_g(psmooth::make_mult_fn(*g4), *q4, trunc, ws);
    emit_result(cfg.format, "meanvalue_cq",
                {{"g", *g4}, {"q", std::to_string(*q4)}, {"P", std::to_string(trunc)}},
                {{"value", c.value}, {"tail_estimate", c.tail_estimate}});
  });

  auto* ka = mv->add_subcommand("kappa", "Mertens residual sum_{p<=w} g(p) log p / p - kappa log w");
  auto g5 = std::make_shared<std::string>();
  auto w5 = std::make_shared<u64>(0);
  ka->add_option("--g", *g5, "function spec")->required();
  ka->add_option("--w", *w5, "prime cutoff")->required();
  ka->callback([&ctx, g5, w5] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    psmooth::MultFnSpec g = psmooth::make_mult_fn(*g5);
    emit_result(cfg.format, "meanvalue_kappa", {{"g", *g5}, {"w", std::to_string(*w5)}},
                {{"residual", psmooth::kappa_estimate(g, *w5, ws)}, {"kappa", g.kappa}});
  });

  auto* we = mv->add_subcommand("weighted", "weighted coprime sum against x log^k(du) / C(f)");
  auto poly = std::make_shared<std::string>();
  auto x6 = std::make_shared<u64>(0);
  auto u6 = std::make_shared<double>(0);
  auto P6 = std::make_shared<u64>(0);
  we->add_option("--poly", *poly, "factored polynomial")->required();
  we->add_option("--x", *x6, "range end")->required();
  we->add_option("--u", *u6, "smoothness parameter, y = x^(1/u)")->required();
  we->add_option("--P", *P6, "truncation prime (default from config)");
  we->callback([&ctx, poly, x6, u6, P6] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P6 ? *P6 : cfg.truncation;
    FactoredPoly f = arg_factored(*poly);
    psmooth::WeightedSum ws_result = psmooth::weighted_coprime_sum(f, *x6, *u6, trunc, ws);
    emit_result(cfg.format, "meanvalue_weighted",
                {{"poly", to_string(f)},
                 {"x", std::to_string(*x6)},
                 {"u", std::to_string(*u6)},
                 {"P", std::to_string(trunc)}},
                {{"value", ws_result.value},
                 {"predicted", ws_result.predicted},
                 {"ratio", ws_result.predicted != 0 ? ws_result.value / ws_result.predicted : 0.0},
                 {"tuples", ws_result.tuples},
                 {"y", ws_result.y}});
  });
}

void add_verify(CLI::App& app, Ctx& ctx) {
  auto* ve = app.add_subcommand("verify", "identity checks and asymptotic experiments");
  ve->require_subcommand(1);

  auto* id = ve->add_subcommand("identity", "inclusion-exclusion between smooth and rough counts");
  auto poly1 = std::make_shared<std::string>();
  auto x1 = std::make_shared<u64>(0);
  auto y1 = std::make_shared<u64>(0);
  id->add_option("--poly", *poly1, "factored polynomial")->required();
  id->add_option("--x", *x1, "range end")->required();
  id->add_option("--y", *y1, "smoothness bound")->required();
  id->callback([&ctx, poly1, x1, y1] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    auto rep = psmooth::check_inclusion_exclusion(arg_factored(*poly1), *x1, *y1, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });

  auto* t1 = ve->add_subcommand("theorem1", "smooth polynomial values against prod rho(d_i u)");
  auto poly2 = std::make_shared<std::string>();
  auto xs2 = std::make_shared<std::string>();
  auto us2 = std::make_shared<std::string>();
  auto band2 = std::make_shared<double>(0.05);
  auto P2 = std::make_shared<u64>(0);
  t1->add_option("--poly", *poly2, "factored polynomial")->required();
  t1->add_option("--x", *xs2, "comma-separated x grid")->required();
  t1->add_option("--u", *us2, "comma-separated u grid")->required();
  t1->add_option("--band", *band2, "pass band on |Psi/x - prediction| (default 0.05)");
  t1->add_option("--P", *P2, "truncation prime (default from config)");
  t1->callback([&ctx, poly2, xs2, us2, band2, P2] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P2 ? *P2 : cfg.truncation;
    auto rep = psmooth::theorem_main_experiment(arg_factored(*poly2), parse_u64_list(*xs2),
                                                parse_double_list(*us2), trunc, *band2, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });

  auto* t2 = ve->add_subcommand("theorem2", "smooth shifted primes against rho(u)");
  auto a3 = std::make_shared<i64>(0);
  auto xs3 = std::make_shared<std::string>();
  auto us3 = std::make_shared<std::string>();
  auto band3 = std::make_shared<double>(0.05);
  t2->add_option("--a", *a3, "shift")->required();
  t2->add_option("--x", *xs3, "comma-separated x grid")->required();
  t2->add_option("--u", *us3, "comma-separated u grid")->required();
  t2->add_option("--band", *band3, "pass band on |Phi/pi - rho(u)| (default 0.05)");
  t2->callback([&ctx, a3, xs3, us3, band3] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    auto rep = psmooth::theorem_prime_experiment(*a3, parse_u64_list(*xs3),
                                                 parse_double_list(*us3), *band3, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });

  auto* ap = ve->add_subcommand("ap", "primes in a segment of a progression vs two predictions");
  auto x4 = std::make_shared<u64>(0);
  auto y4 = std::make_shared<u64>(0);
  auto q4 = std::make_shared<u64>(0);
  auto a4 = std::make_shared<i64>(0);
  ap->add_option("--x", *x4, "segment end")->required();
  ap->add_option("--y", *y4, "segment length")->required();
  ap->add_option("--q", *q4, "modulus")->required();
  ap->add_option("--a", *a4, "residue")->required();
  ap->callback([&ctx, x4, y4, q4, a4] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    auto rep = psmooth::hypothesis_AP_probe(*x4, *y4, *q4, *a4, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });

  auto* uh = ve->add_subcommand("uh", "error term E(F;x) with conjectural normalization");
  auto poly5 = std::make_shared<std::string>();
  auto xs5 = std::make_shared<std::string>();
  auto P5 = std::make_shared<u64>(0);
  uh->add_option("--poly", *poly5, "factored polynomial")->required();
  uh->add_option("--x", *xs5, "comma-separated x grid")->required();
  uh->add_option("--P", *P5, "truncation prime (default from config)");
  uh->callback([&ctx, poly5, xs5, P5] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P5 ? *P5 : cfg.truncation;
    auto rep = psmooth::hypothesis_UH_probe(arg_factored(*poly5), parse_u64_list(*xs5), trunc, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });

  auto* cf = ve->add_subcommand("cflb", "transformed singular series sum identity");
  cf->set_help_flag("--help", "print help");
  auto poly6 = std::make_shared<std::string>();
  auto hs6 = std::make_shared<std::string>();
  auto x6 = std::make_shared<u64>(100);
  auto P6 = std::make_shared<u64>(0);
  cf->add_option("--poly", *poly6, "factored polynomial")->required();
  cf->add_option("--h", *hs6, "comma-separated h per factor")->required();
  cf->add_option("--x", *x6, "recorded range end (default 100)");
  cf->add_option("--P", *P6, "truncation prime (default from config)");
  cf->callback([&ctx, poly6, hs6, x6, P6] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    Workspace ws(cfg);
    u64 trunc = *P6 ? *P6 : cfg.truncation;
    auto rep = psmooth::check_cflb_identity(arg_factored(*poly6), parse_u64_list(*hs6), *x6,
                                            trunc, ws);
    emit_report(cfg.format, rep);
    if (!rep.pass) ctx.failures++;
  });
}

void add_cache(CLI::App& app, Ctx& ctx) {
  auto* ca = app.add_subcommand("cache", "prime table cache maintenance");
  ca->require_subcommand(1);

  auto* build = ca->add_subcommand("build-primes", "sieve and store a prime table");
  auto limit = std::make_shared<u64>(0);
  build->add_option("--limit", *limit, "table limit")->required();
  build->callback([&ctx, limit] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    if (*limit < 2) throw domain_error("limit must be >= 2");
    if (*limit > cfg.prime_table_cap) throw domain_error("limit above prime_table_cap");
    std::string dir = cfg.resolve_cache_dir();
    std::filesystem::create_directories(dir);
    psmooth::PrimeTable t = psmooth::PrimeTable::load_or_build(*limit, dir);
    emit_result(cfg.format, "cache_build_primes", {{"limit", std::to_string(*limit)}},
                {{"path", dir + "/primes_" + std::to_string(*limit) + ".pspt"},
                 {"primes", t.count_leq(*limit)}});
  });

  auto* clear = ca->add_subcommand("clear", "remove cached prime tables");
  clear->callback([&ctx] {
    psmooth::RunConfig cfg = make_config(ctx.globals);
    std::string dir = cfg.resolve_cache_dir();
    u64 removed = 0;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.path().extension() == ".pspt" && std::filesystem::remove(entry.path(), ec))
        removed++;
    }
    emit_result(cfg.format, "cache_clear", {{"dir", dir}}, {{"removed", removed}});
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smooth values of polynomials: local densities, exact counts, experiments"};
  app.require_subcommand(1);
  Ctx ctx;
  app.add_option("--config", ctx.globals.config_file, "flat key=value config file");
  app.add_option("--set", ctx.globals.sets, "config override key=value (repeatable)");
  app.add_option("--format", ctx.globals.format, "plain, json or csv")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--truncation,-P", ctx.globals.truncation, "Euler product truncation prime");
  app.add_option("--threads", ctx.globals.threads, "worker threads, 0 = all");
  app.add_option("--cache-dir", ctx.globals.cache_dir, "cache directory");
  app.add_flag("--progress", ctx.globals.progress, "progress diagnostics to stderr");

  add_rho(app, ctx);
  add_rho_table(app, ctx);
  add_li(app, ctx);
  add_li_poly(app, ctx);
  add_local(app, ctx);
  add_roots(app, ctx);
  add_constant(app, ctx);
  add_transform(app, ctx);
  add_q_of(app, ctx);
  add_structure(app, ctx);
  add_count(app, ctx);
  add_meanvalue(app, ctx);
  add_verify(app, ctx);
  add_cache(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const psmooth::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return ctx.failures ? 1 : 0;
}
