#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psmooth/config.hpp"
#include "psmooth/factored.hpp"

namespace psmooth {

struct PointRecord {
  std::vector<std::pair<std::string, double>> params;
  double exact = 0;
  double prediction = 0;
  double abs_error = 0;
  double normalized = 0;
  bool pass = true;
  bool rejected = false;  // parameter outside the stated range, listed not dropped
  std::string note;
};

struct ExperimentReport {
  int schema_version = 1;
  std::string name;
  std::string kind;  // identity | asymptotic | probe
  std::vector<std::pair<std::string, std::string>> parameters;
  double tolerance = 0;
  u64 truncation = 0;
  u64 seed = 0;
  std::vector<PointRecord> points;
  bool pass = true;
  double runtime_seconds = 0;  // under "meta" in JSON, along with the timestamp
  std::string timestamp;

  std::string to_json() const;
  std::string to_csv() const;
};

// exact integer identity: Psi(F;x,y) = floor(x) + alternating sum of the
// all-factors-rough counts over nonempty factor subsets
ExperimentReport check_inclusion_exclusion(const FactoredPoly& F, u64 x, u64 y, Workspace& ws);

// Psi(F;x,x^(1/u))/x against prod_i rho(deg(F_i) u)
ExperimentReport theorem_main_experiment(const FactoredPoly& F, const std::vector<u64>& xs,
                                         const std::vector<double>& us, u64 P, double band,
                                         Workspace& ws);

// Phi_a(x,x^(1/u))/pi(x) against rho(u)
ExperimentReport theorem_prime_experiment(i64 a, const std::vector<u64>& xs,
                                          const std::vector<double>& us, double band,
                                          Workspace& ws);

// primes in (x-y, x] congruent to a mod q against y/(phi(q) log x) and the
// li-difference form
ExperimentReport hypothesis_AP_probe(u64 x, u64 y, u64 q, i64 a, Workspace& ws);

// E(F;x) trend with normalization E / (C(F) x / log^(K+1) x + 1)
ExperimentReport hypothesis_UH_probe(const FactoredPoly& F, const std::vector<u64>& xs, u64 P,
                                     Workspace& ws);

// sum over b of C(f_{h,b}) against C(f) G(f;h_1...h_k) prod_i sigma*(f_i;h_i),
// both sides truncated at the same P
ExperimentReport check_cflb_identity(const FactoredPoly& f, const std::vector<u64>& hs, u64 x,
                                     u64 P, Workspace& ws);

}  // namespace psmooth
