#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"

namespace psmooth {

// multiplicative function described by its values at prime powers
struct MultFnSpec {
  std::string name;
  double kappa = 1.0;  // mean value of g(p) in the Mertens sense
  double alpha = 0.0;  // declared growth exponent, informational
  std::function<double(u64 p, unsigned nu)> pp;

  double eval(u64 n, const std::vector<u32>& spf) const;
};

MultFnSpec mult_one();
MultFnSpec mult_sigma(const FactoredPoly& f);
MultFnSpec mult_sigma_star(const FactoredPoly& f);
MultFnSpec mult_G(const FactoredPoly& f);
MultFnSpec mult_G_sigma(const FactoredPoly& f);
MultFnSpec mult_G_sigma_star(const FactoredPoly& f);
// coordinate function G(f;n) sigma*(g;n) with g a single factor of f
MultFnSpec mult_G_sigma_star_mixed(const FactoredPoly& f, const Poly& g);

// registry: one | sigma:<poly> | sigma_star:<poly> | G:<poly> | Gsigma:<poly>
// | Gsigma_star:<poly>, with <poly> in plain or factored grammar
MultFnSpec make_mult_fn(const std::string& spec);

double Mg_sum(const MultFnSpec& g, u64 x, Workspace& ws);
double Mg_sum_coprime(const MultFnSpec& g, u64 x, u64 q, Workspace& ws);

// sum of prod_i g_i(n_i)/n_i over pairwise-coprime tuples with n_i <= x_i
double coprime_multisum(const std::vector<MultFnSpec>& gs, const std::vector<u64>& xs,
                        Workspace& ws);

struct MeanValueConstant {
  double value = 0;
  u64 truncation = 0;
  double value_half = 0;   // same product cut at truncation/2
  double tail_estimate = 0;
};

MeanValueConstant c_of_g(const MultFnSpec& g, u64 P, Workspace& ws);
MeanValueConstant c_q_of_g(const MultFnSpec& g, u64 q, u64 P, Workspace& ws);
MeanValueConstant c_multi(const std::vector<MultFnSpec>& gs, u64 P, Workspace& ws);

// 1 + sum over p | q of g(p) log p / p
double delta_q(const MultFnSpec& g, u64 q);

// residual of the Mertens-type sum: sum_{p<=w} g(p) log p / p - kappa log w
double kappa_estimate(const MultFnSpec& g, u64 w, Workspace& ws);

struct WeightedSum {
  double value = 0;
  double predicted = 0;  // x log^k(du) / C(f)
  u64 tuples = 0;        // nonzero terms summed
  double y = 0;
};

// sum over pairwise-coprime h_i <= f_i(x)/y of
//   G(f;h_1...h_k) prod_i sigma*(f_i;h_i) li_{h}(f;x) / (h_1...h_k)
// with y = x^(1/u), against the prediction x log^k(du) / C(f)
WeightedSum weighted_coprime_sum(const FactoredPoly& f, u64 x, double u, u64 P, Workspace& ws);

}  // namespace psmooth
