#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "psmooth/dickman.hpp"
#include "psmooth/primes.hpp"
#include "psmooth/util.hpp"

namespace psmooth {

struct RunConfig {
  u64 truncation = 1'000'000;  // default prime cutoff for Euler products
  u64 chunk = 1ull << 20;
  unsigned threads = 0;  // 0 = all hardware threads
  std::string cache_dir;  // empty = resolve from PSMOOTH_CACHE or ~/.cache/psmooth
  std::string format = "plain";
  u64 seed = 1;
  u64 prime_table_cap = 100'000'000;
  u64 hensel_cap = 1ull << 40;
  u32 spf_cap = 10'000'000;
  u64 sieve_threshold = 100'000;  // largest prime sieved by progressions
  double rho_umax = 10.0;
  bool progress = false;

  void set(const std::string& key, const std::string& value);
  static RunConfig from_file(const std::string& path);
  std::string resolve_cache_dir() const;
  unsigned effective_threads() const;
};

// shared lazily built tables
class Workspace {
 public:
  Workspace() = default;
  explicit Workspace(RunConfig cfg) : cfg_(std::move(cfg)) {}

  const RunConfig& config() const { return cfg_; }
  RunConfig& config() { return cfg_; }

  std::shared_ptr<const PrimeTable> primes(u64 limit);
  std::shared_ptr<const std::vector<u32>> spf(u32 cap);
  const DickmanTable& dickman();

 private:
  RunConfig cfg_;
  std::mutex mu_;
  std::shared_ptr<const PrimeTable> primes_;
  std::shared_ptr<const std::vector<u32>> spf_;
  std::shared_ptr<const DickmanTable> dickman_;
};

}  // namespace psmooth
