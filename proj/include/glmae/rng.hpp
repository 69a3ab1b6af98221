#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace glmae {

// Deterministic random stream. Wraps std::mt19937_64 but derives every draw
// through fixed arithmetic (no std::*_distribution), so a given seed yields
// the same byte stream on every build. Reproducibility of training runs and
// frozen test values depends on this staying stable.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1), 53 mantissa bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n). n must be >= 1.
  uint64_t below(uint64_t n);

  // Standard normal via Box-Muller, one spare cached.
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Truncated normal: resample outside [-2, 2] sigma (ViT init convention).
  double trunc_normal(double stddev);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Indices [0, n) in shuffled order.
  std::vector<int> permutation(int n);

  // Independent child stream derived from this one.
  Rng split() { return Rng(next_u64()); }

  // Serializable state, used by checkpoint resume.
  std::string state() const;
  void restore(const std::string& s);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 hash step. Used to derive per-item seeds from (seed, index).
uint64_t mix_seed(uint64_t seed, uint64_t index);

}  // namespace glmae
