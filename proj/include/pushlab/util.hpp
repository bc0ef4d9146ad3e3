#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>

namespace pushlab::util {

// Worker count for data-parallel loops. Capped by the PUSHLAB_THREADS
// environment variable when set.
int worker_count();

// Runs fn(0..n-1), possibly across threads. Callers must write results to
// index-disjoint slots; reductions happen afterwards in index order so the
// outcome does not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

uint64_t fnv1a64(std::string_view s);
std::string hex64(uint64_t v);

// Derives an independent stream seed from (base, a, b).
uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b = 0);

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  // Inclusive bounds.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }
  double normal(double mu, double sigma) {
    return std::normal_distribution<double>(mu, sigma)(eng_);
  }
  uint64_t next() { return eng_(); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Fixed-precision formatting for CSV output; stable across runs.
std::string format_double(double v, int prec = 6);

// Writes via a temp file + rename so failed runs never leave a partial
// artifact under the final name.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace pushlab::util
