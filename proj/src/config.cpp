#include "psmooth/config.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <thread>
#include <vector>

namespace psmooth {

void parallel_chunks(u64 begin, u64 end, u64 chunk, unsigned threads,
                     const std::function<void(u64, u64)>& fn) {
  if (begin >= end) return;
  if (chunk == 0) chunk = 1ull << 20;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  u64 nchunks = (end - begin + chunk - 1) / chunk;
  threads = (unsigned)std::min<u64>(threads, nchunks);
  if (threads <= 1) {
    for (u64 lo = begin; lo < end; lo += chunk) fn(lo, std::min(end, lo + chunk));
    return;
  }
  std::atomic<u64> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        u64 i = next.fetch_add(1);
        if (i >= nchunks) return;
        u64 lo = begin + i * chunk;
        u64 hi = std::min(end, lo + chunk);
        try {
          fn(lo, hi);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto as_u64 = [&]() -> u64 {
    size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw domain_error("config: bad integer for " + key);
    return v;
  };
  if (key == "P" || key == "truncation")
    truncation = as_u64();
  else if (key == "chunk")
    chunk = as_u64();
  else if (key == "threads")
    threads = (unsigned)as_u64();
  else if (key == "cache_dir")
    cache_dir = value;
  else if (key == "format") {
    if (value != "plain" && value != "json" && value != "csv")
      throw domain_error("config: format must be plain, json or csv");
    format = value;
  } else if (key == "seed")
    seed = as_u64();
  else if (key == "prime_table_cap")
    prime_table_cap = as_u64();
  else if (key == "hensel_cap")
    hensel_cap = as_u64();
  else if (key == "spf_cap")
    spf_cap = (u32)as_u64();
  else if (key == "sieve_threshold")
    sieve_threshold = as_u64();
  else if (key == "rho_umax")
    rho_umax = std::stod(value);
  else if (key == "progress")
    progress = (value == "1" || value == "true");
  else
    throw domain_error("config: unknown key " + key);
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw domain_error("config: line " + std::to_string(lineno) + " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    size_t v = value.find_first_not_of(" \t");
    value = v == std::string::npos ? "" : value.substr(v);
    cfg.set(key, value);
  }
  return cfg;
}

std::string RunConfig::resolve_cache_dir() const {
  if (!cache_dir.empty()) return cache_dir;
  if (const char* env = std::getenv("PSMOOTH_CACHE")) return env;
  if (const char* home = std::getenv("HOME")) return std::string(home) + "/.cache/psmooth";
  return ".psmooth-cache";
}

unsigned RunConfig::effective_threads() const {
  return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
}

std::shared_ptr<const PrimeTable> Workspace::primes(u64 limit) {
  if (limit > cfg_.prime_table_cap)
    throw resource_error("prime table request " + std::to_string(limit) +
                         " exceeds cap " + std::to_string(cfg_.prime_table_cap));
  std::lock_guard<std::mutex> lk(mu_);
  if (primes_ && primes_->limit() >= limit) return primes_;
  u64 rounded = std::max<u64>(limit, 1u << 16);
  rounded = std::min<u64>(std::bit_ceil(rounded), cfg_.prime_table_cap);
  rounded = std::max(rounded, limit);
  primes_ = std::make_shared<const PrimeTable>(
      PrimeTable::load_or_build(rounded, cfg_.resolve_cache_dir()));
  return primes_;
}

std::shared_ptr<const std::vector<u32>> Workspace::spf(u32 cap) {
  if (cap > cfg_.spf_cap)
    throw resource_error("factor table request " + std::to_string(cap) + " exceeds cap " +
                         std::to_string(cfg_.spf_cap));
  std::lock_guard<std::mutex> lk(mu_);
  if (spf_ && spf_->size() > cap) return spf_;
  u32 rounded = std::max<u32>(cap, 1u << 16);
  if (rounded < cfg_.spf_cap / 2) rounded = std::min<u32>((u32)std::bit_ceil(rounded), cfg_.spf_cap);
  spf_ = std::make_shared<const std::vector<u32>>(spf_table(rounded));
  return spf_;
}

const DickmanTable& Workspace::dickman() {
  std::lock_guard<std::mutex> lk(mu_);
  if (!dickman_) dickman_ = std::make_shared<const DickmanTable>(DickmanTable::build(cfg_.rho_umax));
  return *dickman_;
}

}  // namespace psmooth
